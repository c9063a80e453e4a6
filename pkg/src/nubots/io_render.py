"""Text codecs and rendering.

File formats (all line-oriented, ``#`` starts a comment, blank lines
ignored):

* configurations -- header ``nubot-config v1``; ``M x y state`` declares a
  monomer, ``B x1 y1 x2 y2 r|f`` a rigid/flexible bond.
* rule sets -- header ``nubot-rules v1``; one rule per line,
  ``s1 s2 b u -> s1' s2' b' u'`` with ``-`` for an empty side, bond
  ``r``/``f``/``n`` and direction ``+x +y +w -x -y -w``.
* Turing machines -- header ``tm v1``; ``D state sym newstate newsym L|R``
  transitions plus ``START``/``ACCEPT``/``REJECT`` state declarations.
* traces -- produced by the simulator; ``parse_trace`` recovers the header
  fields and event lines.

Formatting is deterministic (sorted), so format/parse round-trips are
byte-exact on canonical output.
"""

from __future__ import annotations

from . import grid
from .model import Bond, Configuration
from .rules import EMPTY, Rule, RuleSet

CONFIG_HEADER = "nubot-config v1"
RULES_HEADER = "nubot-rules v1"
TM_HEADER = "tm v1"

_BOND_OUT = {None: "n", Bond.RIGID: "r", Bond.FLEXIBLE: "f"}
_BOND_IN = {"n": None, "r": Bond.RIGID, "f": Bond.FLEXIBLE}


class FormatError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _check_token(tok: str) -> str:
    if not tok or any(c.isspace() for c in tok) or tok == "-":
        raise FormatError(f"invalid state token {tok!r}")
    return tok


# -- configurations -----------------------------------------------------

def format_config(config: Configuration) -> str:
    out = [CONFIG_HEADER]
    for (x, y), s in sorted(config.monomers.items()):
        out.append(f"M {x} {y} {_check_token(s)}")
    for ((x1, y1), (x2, y2)), t in sorted(config.bonds.items()):
        out.append(f"B {x1} {y1} {x2} {y2} {t.value}")
    return "\n".join(out) + "\n"


def parse_config(text: str) -> Configuration:
    it = _lines(text)
    try:
        _, header = next(it)
    except StopIteration:
        raise FormatError("empty configuration file") from None
    if header != CONFIG_HEADER:
        raise FormatError(f"expected {CONFIG_HEADER!r} header, got {header!r}")
    config = Configuration()
    for lineno, line in it:
        parts = line.split()
        try:
            if parts[0] == "M" and len(parts) == 4:
                config.add_monomer((int(parts[1]), int(parts[2])),
                                   _check_token(parts[3]))
            elif parts[0] == "B" and len(parts) == 6:
                a = (int(parts[1]), int(parts[2]))
                b = (int(parts[3]), int(parts[4]))
                if parts[5] not in ("r", "f"):
                    raise FormatError(f"bad bond type {parts[5]!r}")
                config.set_bond(a, b, _BOND_IN[parts[5]])
            else:
                raise FormatError(f"unrecognized record {parts[0]!r}")
        except (ValueError, KeyError) as e:
            raise FormatError(f"line {lineno}: {e}") from e
    return config


# -- rule sets ----------------------------------------------------------

def _side(tok: str) -> str | None:
    return EMPTY if tok == "-" else _check_token(tok)


def _side_out(s) -> str:
    return "-" if s is EMPTY else _check_token(s)


def format_rule(r: Rule) -> str:
    return (f"{_side_out(r.s1)} {_side_out(r.s2)} {_BOND_OUT[r.b]} "
            f"{grid.DIRECTION_NAMES[r.u]} -> "
            f"{_side_out(r.s1p)} {_side_out(r.s2p)} {_BOND_OUT[r.bp]} "
            f"{grid.DIRECTION_NAMES[r.up]}")


def format_rules(ruleset: RuleSet) -> str:
    out = [RULES_HEADER]
    out.extend(format_rule(r) for r in ruleset.rules)
    return "\n".join(out) + "\n"


def parse_rules(text: str) -> RuleSet:
    it = _lines(text)
    try:
        _, header = next(it)
    except StopIteration:
        raise FormatError("empty rules file") from None
    if header != RULES_HEADER:
        raise FormatError(f"expected {RULES_HEADER!r} header, got {header!r}")
    rules = []
    for lineno, line in it:
        parts = line.split()
        if len(parts) != 9 or parts[4] != "->":
            raise FormatError(f"line {lineno}: malformed rule {line!r}")
        try:
            if parts[2] not in _BOND_IN or parts[7] not in _BOND_IN:
                raise FormatError("bad bond type")
            rules.append(Rule(
                _side(parts[0]), _side(parts[1]), _BOND_IN[parts[2]],
                grid.NAMED_DIRECTIONS[parts[3]],
                _side(parts[5]), _side(parts[6]), _BOND_IN[parts[7]],
                grid.NAMED_DIRECTIONS[parts[8]],
                rid=len(rules)))
        except (ValueError, KeyError) as e:
            raise FormatError(f"line {lineno}: {e}") from e
    return RuleSet(rules)


# -- Turing machines ----------------------------------------------------

def format_tm(tm) -> str:
    out = [TM_HEADER,
           f"START {_check_token(tm.start)}",
           f"ACCEPT {_check_token(tm.accept)}",
           f"REJECT {_check_token(tm.reject)}"]
    for (q, a), (q2, a2, mv) in sorted(tm.delta.items()):
        out.append(f"D {q} {a} {q2} {a2} {mv}")
    return "\n".join(out) + "\n"


def parse_tm(text: str):
    from .programs.tm import TMSpec

    it = _lines(text)
    try:
        _, header = next(it)
    except StopIteration:
        raise FormatError("empty machine file") from None
    if header != TM_HEADER:
        raise FormatError(f"expected {TM_HEADER!r} header, got {header!r}")
    start = accept = reject = None
    delta = {}
    for lineno, line in it:
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "START" and len(parts) == 2:
                start = _check_token(parts[1])
            elif kind == "ACCEPT" and len(parts) == 2:
                accept = _check_token(parts[1])
            elif kind == "REJECT" and len(parts) == 2:
                reject = _check_token(parts[1])
            elif kind == "D" and len(parts) == 6:
                if parts[5] not in ("L", "R"):
                    raise FormatError(f"bad move {parts[5]!r}")
                key = (_check_token(parts[1]), _check_token(parts[2]))
                if key in delta:
                    raise FormatError(f"duplicate transition for {key}")
                delta[key] = (_check_token(parts[3]), _check_token(parts[4]),
                              parts[5])
            else:
                raise FormatError(f"unrecognized record {line!r}")
        except FormatError:
            raise
        except (ValueError, KeyError) as e:
            raise FormatError(f"line {lineno}: {e}") from e
    if start is None or accept is None or reject is None:
        raise FormatError("machine needs START, ACCEPT and REJECT states")
    return TMSpec(start=start, accept=accept, reject=reject, delta=delta)


# -- traces -------------------------------------------------------------

def parse_trace(text: str) -> tuple[dict, list[dict]]:
    """Return (header fields, events); events keep their raw line too."""
    header = {}
    events = []
    lines = text.splitlines()
    if not lines or lines[0].strip() != "# nubot-trace v1":
        raise FormatError("expected '# nubot-trace v1' header")
    for raw in lines[1:]:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                k, v = body.split("=", 1)
                header[k.strip()] = v.strip()
            continue
        fields = {}
        for part in line.split():
            if "=" not in part:
                raise FormatError(f"malformed trace line {line!r}")
            k, v = part.split("=", 1)
            fields[k] = v
        fields["raw"] = line
        events.append(fields)
    return header, events


# -- rendering ----------------------------------------------------------

def render_ascii(config: Configuration, labels: bool = False) -> str:
    """Rows top to bottom; each row shifted half a cell per unit of y."""
    if not config.monomers:
        return "(empty)\n"
    min_x, min_y, max_x, max_y = config.bounding_box()
    out = []
    for y in range(max_y, min_y - 1, -1):
        pad = " " * (y - min_y)
        row_xs = [x for x, yy in config.monomers if yy == y]
        last = max(row_xs) if row_xs else min_x - 1
        cells = []
        for x in range(min_x, last + 1):
            s = config.state((x, y))
            if s is None:
                cells.append(". " if labels else ".")
            elif labels:
                cells.append(f"{s:<2.2s}")
            else:
                cells.append(s[0])
        out.append((pad + " ".join(cells) if labels
                    else pad + "".join(cells)).rstrip())
    return "\n".join(out) + "\n"


def render_svg(config: Configuration, scale: float = 24.0) -> str:
    """SVG picture: monomers as labelled circles, bonds as lines
    (solid = rigid, dashed = flexible)."""
    pts = {p: grid.to_cartesian(p) for p in config.monomers}
    if not pts:
        return ('<svg xmlns="http://www.w3.org/2000/svg" '
                'width="10" height="10"></svg>')
    xs = [c[0] for c in pts.values()]
    ys = [c[1] for c in pts.values()]
    pad = 1.0
    w = (max(xs) - min(xs) + 2 * pad) * scale
    h = (max(ys) - min(ys) + 2 * pad) * scale

    def at(p):
        cx, cy = pts[p]
        return ((cx - min(xs) + pad) * scale,
                (max(ys) - cy + pad) * scale)  # y up

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
           f'width="{w:.0f}" height="{h:.0f}" '
           f'font-family="monospace" font-size="{scale * 0.38:.1f}">']
    for (a, b), t in sorted(config.bonds.items()):
        (x1, y1), (x2, y2) = at(a), at(b)
        dash = '' if t is Bond.RIGID else ' stroke-dasharray="4 3"'
        out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" '
                   f'y2="{y2:.1f}" stroke="black" stroke-width="2"{dash}/>')
    r = scale * 0.42
    for p, s in sorted(config.monomers.items()):
        x, y = at(p)
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{r:.1f}" '
                   f'fill="#e8f0fe" stroke="#333"/>')
        label = s if len(s) <= 4 else s[:4]
        out.append(f'<text x="{x:.1f}" y="{y + scale * 0.13:.1f}" '
                   f'text-anchor="middle">{_escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
