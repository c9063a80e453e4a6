"""Computable color patterns filling an n-by-n region exactly.

For n = 2**k with k itself a power of two, the program tiles the
target region with n columns of n monomers and colors every monomer,
using no movement rules at all: every monomer is created in its final
position, so no monomer ever exists outside the n-by-n target region.

Layout and staging:

* Each column is a stack of n/k *strips* of k cells.  A strip cell
  carries a composite symbol ``"<ibit><tbit><pos>"``: one bit of the
  column index i (most significant at the top), one bit of the strip
  index t (least significant at the bottom, with ``x`` marking cells
  above the t-field), and a position flag ``t``/``m``/``b`` (``s`` for
  the one-cell strips of n = 2).

* Column 0 grows its top strip (i = 0, t = 0) from the seed.  A
  walker then copies the top strip one cell to the right, the new
  column increments its i-track in place, and — unless i is now
  all-ones, which marks the final column — repeats.  Only the top
  strips carry horizontal bonds.

* Within a column, each strip is copied one cell at a time onto a
  seed below it, the copy increments the t-track, and an all-ones
  t-field marks the final strip and stops the descent.  The region
  below a strip is touched only after the strip itself is complete,
  so growth never leaves the target region.

* The user machine runs once per strip, head starting on the top
  cell, over the strip's composite symbols.  It must rewrite every
  cell to ``B`` (black) or ``W`` (white) and then halt (transition
  into its accept state); it must never step off the strip, which the
  position flags inside the symbols make detectable.  Strips finalize
  bottom-up: a strip's machine only launches after everything below
  it has taken final colors, so each stage sees only quiet neighbors.

The terminal configuration is the n-by-n block with every monomer in
final state ``p.B`` or ``p.W``.
"""

from __future__ import annotations

from .. import grid
from ..model import Bond, Configuration
from ..rules import RuleSet, make_rule
from .program import Program
from .tm import TMSpec

DN = grid.DIRECTION_NAMES[(0, -1)]
AX = grid.DIRECTION_NAMES[(1, 0)]
POS = "tmbs"
TOPS = "ts"
BOTS = "bs"
COLORS = {"B": "p.B", "W": "p.W"}


def _pos_of(r: int, k: int) -> str:
    if k == 1:
        return "s"
    return "t" if r == 0 else ("b" if r == k - 1 else "m")


def _pris(iv, tv, pos) -> str:
    return f"{iv}{tv}{pos}"


def _cell(pos, sym) -> str:
    return f"p.c.{pos}.{sym}"


def _mark(pos, sym) -> str:
    return f"p.cm.{pos}.{sym}"


def _head(q, pos, sym) -> str:
    return f"p.h.{q}.{pos}.{sym}"


def _asc(mission, start_state, pos, sym) -> str:
    """An ascending control token carried by the cell (pos, sym); at a
    strip-top cell it turns into the mission's working state."""
    if pos in TOPS:
        return {"cr": f"p.r.{pos}.{sym}",
                "cd": f"p.g.{pos}.{sym}",
                "cm": _head(start_state, pos, sym),
                "fz": f"p.v.{pos}.{sym}"}[mission]
    return f"p.u.{mission}.{pos}.{sym}"


def strip_symbols(k: int) -> list:
    syms = []
    for pos in (POS if k > 2 else ("ts" if k == 1 else "tb")):
        if k == 1 and pos != "s":
            continue
        for iv in "01":
            for tv in "01x":
                syms.append(_pris(iv, tv, pos))
    return syms


def _all_pris_pairs():
    return [(pos, _pris(iv, tv, pos))
            for pos in POS for iv in "01" for tv in "01x"]


def emit_pattern_rules(rules: list, tm: TMSpec, k: int, p: int) -> None:
    r = make_rule
    start = tm.start
    pris_pairs = _all_pris_pairs()
    alphabet = sorted(set(tm.alphabet())
                      | {sym for _, sym in pris_pairs} | {"B", "W"})
    all_pairs = [(pos, sym) for pos in POS for sym in alphabet]

    def tv_of(row):
        return "x" if row < p else "0"

    # --- column-0 bootstrap: grow the top strip downward -------------
    for row in range(k - 1):
        pos = _pos_of(row, k)
        rules.append(r(f"p.z.{row}", None, "n", DN,
                       _cell(pos, _pris(0, tv_of(row), pos)),
                       f"p.z.{row + 1}", "r", DN))
    if k >= 2:
        pa = _pos_of(k - 2, k)
        sa = _pris(0, tv_of(k - 2), pa)
        pb = _pos_of(k - 1, k)
        sb = _pris(0, tv_of(k - 1), pb)
        rules.append(r(_cell(pa, sa), f"p.z.{k - 1}", "r", DN,
                       _cell(pa, sa), _asc("cr", start, pb, sb), "r", DN))

    # --- generic ascents ---------------------------------------------
    for pa, sa in pris_pairs:
        for pb, sb in pris_pairs:
            for m in ("cr", "cd"):
                rules.append(r(_cell(pa, sa), f"p.u.{m}.{pb}.{sb}", "r", DN,
                               _asc(m, start, pa, sa), _cell(pb, sb),
                               "r", DN))
            # the coloring trigger unmarks copied-out cells on its way up
            for above in (_cell(pa, sa), _mark(pa, sa)):
                rules.append(r(above, f"p.u.cm.{pb}.{sb}", "r", DN,
                               _asc("cm", start, pa, sa), _cell(pb, sb),
                               "r", DN))
    for pa, sa in all_pairs:
        for pb, sb in all_pairs:
            rules.append(r(_cell(pa, sa), f"p.u.fz.{pb}.{sb}", "r", DN,
                           _asc("fz", start, pa, sa), _cell(pb, sb),
                           "r", DN))

    # --- rightward column copy ---------------------------------------
    def iv_inc(sym, carry):
        iv = int(sym[0])
        return _pris(iv ^ carry, sym[1], sym[2]), iv & carry

    for pos, sym in pris_pairs:
        if pos in BOTS:
            if pos == "s":
                # one-cell strips: the increment is a single bit flip,
                # and the flipped column is necessarily the last one
                new = f"p.rr.s.{_pris(1, sym[1], 's')}"
            else:
                new = f"p.j.{pos}.{sym}"
        else:
            new = _cell(pos, sym)
        rules.append(r(f"p.r.{pos}.{sym}", None, "n", AX,
                       f"p.rr.{pos}.{sym}", new, "r", AX))
        if pos in BOTS:
            # the walker reaches the strip bottom: seed the strip below
            # and send the copy-down token back to the top
            rules.append(r(f"p.rr.{pos}.{sym}", None, "n", DN,
                           _asc("cd", start, pos, sym), "p.n", "r", DN))
        for pb, sb in pris_pairs:
            rules.append(r(f"p.rr.{pos}.{sym}", _cell(pb, sb), "r", DN,
                           _cell(pos, sym), f"p.r.{pb}.{sb}", "r", DN))

    # --- fresh column: increment the i-track, test for the last one --
    if k >= 2:
        def iv_ann(carry, pos, sym):
            return (f"p.ivt.{pos}.{sym}" if pos in TOPS
                    else f"p.iv.{carry}.{pos}.{sym}")

        for pa, sa in pris_pairs:
            for pb, sb in pris_pairs:
                if pb in BOTS:
                    sb1, c1 = iv_inc(sb, 1)
                    sa2, c2 = iv_inc(sa, c1)
                    rules.append(r(_cell(pa, sa), f"p.j.{pb}.{sb}", "n", DN,
                                   iv_ann(c2, pa, sa2), _cell(pb, sb1),
                                   "r", DN))
                for c in (0, 1):
                    sa2, c2 = iv_inc(sa, c)
                    rules.append(r(_cell(pa, sa), f"p.iv.{c}.{pb}.{sb}",
                                   "n", DN,
                                   iv_ann(c2, pa, sa2), _cell(pb, sb),
                                   "r", DN))

        def kk_ann(acc, pos, sym):
            acc &= int(sym[0])
            return (f"p.kb.{acc}.{pos}.{sym}" if pos in BOTS
                    else f"p.kk.{acc}.{pos}.{sym}")

        for pa, sa in pris_pairs:
            for pb, sb in pris_pairs:
                rules.append(r(f"p.ivt.{pa}.{sa}", _cell(pb, sb), "r", DN,
                               _cell(pa, sa), kk_ann(int(sa[0]), pb, sb),
                               "r", DN))
                for a in (0, 1):
                    rules.append(r(f"p.kk.{a}.{pa}.{sa}", _cell(pb, sb),
                                   "r", DN,
                                   _cell(pa, sa), kk_ann(a, pb, sb),
                                   "r", DN))
        for pos, sym in pris_pairs:
            if pos not in BOTS:
                continue
            rules.append(r(f"p.kb.1.{pos}.{sym}", None, "n", DN,
                           _asc("cd", start, pos, sym), "p.n", "r", DN))
            rules.append(r(f"p.kb.0.{pos}.{sym}", None, "n", DN,
                           _asc("cr", start, pos, sym), None, "n", DN))

    # --- strip copy-down: fetch cells top-down, mark sources ---------
    def write(carried):
        pos = carried[-1]
        return (f"p.pc.{pos}.{carried}" if pos in BOTS
                else f"p.u.g.{pos}.{carried}")

    for pos, sym in pris_pairs:
        rules.append(r(f"p.g.{pos}.{sym}", "p.n", "r", DN,
                       _mark(pos, sym), write(sym), "r", DN))
        for pb, sb in pris_pairs:
            rules.append(r(f"p.g.{pos}.{sym}", _cell(pb, sb), "r", DN,
                           _mark(pos, sym), f"p.d.{sym}.{pb}.{sb}",
                           "r", DN))
    for carried in {sym for _, sym in pris_pairs}:
        for pa, sa in pris_pairs:
            ferry = f"p.d.{carried}.{pa}.{sa}"
            rules.append(r(ferry, "p.n", "r", DN,
                           _cell(pa, sa), write(carried), "r", DN))
            rules.append(r(ferry, None, "n", DN,
                           _cell(pa, sa), write(carried), "r", DN))
            for pb, sb in pris_pairs:
                rules.append(r(ferry, _cell(pb, sb), "r", DN,
                               _cell(pa, sa), f"p.d.{carried}.{pb}.{sb}",
                               "r", DN))
    for pa, sa in pris_pairs:
        for pb, sb in pris_pairs:
            # the returning token stops under the marked block: the
            # cell it rides is the next one to fetch
            rules.append(r(_cell(pa, sa), f"p.u.g.{pb}.{sb}", "r", DN,
                           f"p.u.g.{pa}.{sa}", _cell(pb, sb), "r", DN))
            rules.append(r(_mark(pa, sa), f"p.u.g.{pb}.{sb}", "r", DN,
                           _mark(pa, sa), f"p.g.{pb}.{sb}", "r", DN))

    # --- new strip: increment the t-track, test for the last one -----
    def t_inc(sym, carry):
        if sym[1] == "x" or carry == 0:
            return sym, 0
        tv = int(sym[1])
        return _pris(sym[0], tv ^ 1, sym[2]), tv & 1

    def ti_ann(carry, pos, sym):
        return (f"p.tit.{pos}.{sym}" if pos in TOPS
                else f"p.ti.{carry}.{pos}.{sym}")

    def k2_ann(acc, pos, sym):
        acc &= 1 if sym[1] == "x" else int(sym[1])
        return (f"p.k2b.{acc}.{pos}.{sym}" if pos in BOTS
                else f"p.k2.{acc}.{pos}.{sym}")

    for pa, sa in pris_pairs:
        for pb, sb in pris_pairs:
            if pb in BOTS:
                sb1, c1 = t_inc(sb, 1)
                sa2, c2 = t_inc(sa, c1)
                rules.append(r(_cell(pa, sa), f"p.pc.{pb}.{sb}", "r", DN,
                               ti_ann(c2, pa, sa2), _cell(pb, sb1),
                               "r", DN))
                if pb in TOPS:
                    # one-cell strip: increment and test in one step,
                    # bridging from the marked source bottom above
                    rules.append(r(_mark(pa, sa), f"p.pc.{pb}.{sb}",
                                   "r", DN,
                                   _mark(pa, sa), k2_ann(1, pb, sb1),
                                   "r", DN))
            for c in (0, 1):
                sa2, c2 = t_inc(sa, c)
                rules.append(r(_cell(pa, sa), f"p.ti.{c}.{pb}.{sb}",
                               "r", DN,
                               ti_ann(c2, pa, sa2), _cell(pb, sb),
                               "r", DN))
            # the finished increment reaches the strip top, under the
            # marked bottom of the source strip: start the all-ones test
            rules.append(r(_mark(pa, sa), f"p.tit.{pb}.{sb}", "r", DN,
                           _mark(pa, sa), k2_ann(1, pb, sb), "r", DN))
            for a in (0, 1):
                rules.append(r(f"p.k2.{a}.{pa}.{sa}", _cell(pb, sb),
                               "r", DN,
                               _cell(pa, sa), k2_ann(a, pb, sb), "r", DN))
    for pos, sym in pris_pairs:
        if pos not in BOTS:
            continue
        rules.append(r(f"p.k2b.0.{pos}.{sym}", None, "n", DN,
                       _asc("cd", start, pos, sym), "p.n", "r", DN))
        # the all-ones t-field marks the final strip: color it now
        rules.append(r(f"p.k2b.1.{pos}.{sym}", None, "n", DN,
                       _asc("cm", start, pos, sym), None, "n", DN))

    # --- the user machine, embedded over strip cells -----------------
    halting = {tm.accept}
    for (q, sym), (q2, sym2, mv) in sorted(tm.delta.items()):
        for pos in POS:
            cur = _head(q, pos, sym)
            if q2 in halting:
                fz = _asc("fz", start, pos, sym2)
                rules.append(r(cur, None, "n", DN, fz, None, "n", DN))
                rules.append(r(None, cur, "n", DN, None, fz, "n", DN))
                for pb, sb in all_pairs:
                    rules.append(r(cur, _cell(pb, sb), "r", DN,
                                   fz, _cell(pb, sb), "r", DN))
                    rules.append(r(_cell(pb, sb), cur, "r", DN,
                                   _cell(pb, sb), fz, "r", DN))
            elif mv == "R":
                for pb, sb in all_pairs:
                    rules.append(r(cur, _cell(pb, sb), "r", DN,
                                   _cell(pos, sym2), _head(q2, pb, sb),
                                   "r", DN))
            else:
                for pa, sa in all_pairs:
                    rules.append(r(_cell(pa, sa), cur, "r", DN,
                                   _head(q2, pa, sa), _cell(pos, sym2),
                                   "r", DN))

    # --- finalize: sweep colors down, then report completion upward --
    for pos in POS:
        for sym in ("B", "W"):
            sweep = f"p.v.{pos}.{sym}"
            for pb, sb in all_pairs:
                rules.append(r(sweep, _cell(pb, sb), "r", DN,
                               COLORS[sym], f"p.v.{pb}.{sb}", "r", DN))
            if pos in BOTS:
                rules.append(r(sweep, None, "n", DN,
                               f"p.dn.{sym}", None, "n", DN))
                for other in ("B", "W"):
                    rules.append(r(sweep, COLORS[other], "r", DN,
                                   f"p.dn.{sym}", COLORS[other], "r", DN))
    for c in ("B", "W"):
        for other in ("B", "W"):
            rules.append(r(COLORS[other], f"p.dn.{c}", "r", DN,
                           f"p.dn.{other}", COLORS[c], "r", DN))
        for pa, sa in pris_pairs:
            # the completion report wakes the copied-out strip above
            rules.append(r(_mark(pa, sa), f"p.dn.{c}", "r", DN,
                           _asc("cm", start, pa, sa), COLORS[c], "r", DN))
        rules.append(r(None, f"p.dn.{c}", "n", DN,
                       None, COLORS[c], "n", DN))


def run_strip(tm: TMSpec, tape: list) -> list:
    """Reference interpreter for one strip run: fixed-length tape,
    head starting at index 0, halting on the accept state."""
    tape = list(tape)
    q, h = tm.start, 0
    for _ in range(10_000 * (len(tape) + 1) * max(1, len(tm.delta))):
        key = (q, tape[h])
        if key not in tm.delta:
            raise ValueError(f"machine stuck on {key}")
        q2, sym2, mv = tm.delta[key]
        tape[h] = sym2
        if q2 == tm.accept:
            return tape
        if q2 == tm.reject:
            raise ValueError("machine rejected a strip")
        q = q2
        h += 1 if mv == "R" else -1
        if not 0 <= h < len(tape):
            raise ValueError("machine left the strip")
    raise ValueError("machine did not halt on a strip")


def checkerboard_tm(k: int) -> TMSpec:
    """Machine coloring cell (i, j) black when i + j is even."""
    if k == 1:
        # one-cell strips: the symbol holds both low bits directly
        delta = {}
        for iv in "01":
            for tv in "01":
                color = "B" if (int(iv) + int(tv)) % 2 == 0 else "W"
                delta[("s0", _pris(iv, tv, "s"))] = ("yes", color, "R")
        return TMSpec(start="s0", accept="yes", reject="no", delta=delta)
    # walk to the bottom cell, read the low bit of i there, then
    # alternate colors on the way back up (k is even, so the low bit
    # of the row index equals the parity of the offset in the strip)
    delta = {}
    for iv in "01":
        for tv in "01x":
            for pos in "tm":
                delta[("s0", _pris(iv, tv, pos))] = (
                    "s0", _pris(iv, tv, pos), "R")
            # bottom cell: offset k-1 is odd
            c0 = (int(iv) + k - 1) % 2
            sym_c = "B" if c0 == 0 else "W"
            delta[("s0", _pris(iv, tv, "b"))] = (f"u{1 - c0}", sym_c, "L")
    for c in (0, 1):
        sym_c = "B" if c == 0 else "W"
        for iv in "01":
            for tv in "01x":
                delta[(f"u{c}", _pris(iv, tv, "m"))] = (
                    f"u{1 - c}", sym_c, "L")
                delta[(f"u{c}", _pris(iv, tv, "t"))] = ("yes", sym_c, "L")
    return TMSpec(start="s0", accept="yes", reject="no", delta=delta)


def constant_color_tm(color: str = "B") -> TMSpec:
    """Machine painting every cell the same color."""
    if color not in ("B", "W"):
        raise ValueError("color must be 'B' or 'W'")
    delta = {}
    for pos, sym in _all_pris_pairs():
        if pos in BOTS:
            delta[("s0", sym)] = ("yes", color, "R")
        else:
            delta[("s0", sym)] = ("s0", color, "R")
    return TMSpec(start="s0", accept="yes", reject="no", delta=delta)


def pattern(tm: TMSpec, n: int) -> Program:
    """Program filling the n-by-n region with the colors ``tm``
    computes, n = 2**k with k a power of two."""
    k = n.bit_length() - 1
    if n < 2 or (1 << k) != n:
        raise ValueError("n must be a power of two")
    p = k.bit_length() - 1
    if (1 << p) != k:
        raise ValueError("n must be 2**k with k itself a power of two")
    rules: list = []
    emit_pattern_rules(rules, tm, k, p)
    if k == 1:
        initial = Configuration({(0, 0): f"p.r.s.{_pris(0, '0', 's')}"})
    else:
        initial = Configuration({(0, 0): "p.z.0"})
    want = Configuration()
    for i in range(n):
        for t in range(n // k):
            tape = []
            for row in range(k):
                iv = (i >> (k - 1 - row)) & 1
                tv = "x" if row < p else str((t >> (k - 1 - row)) & 1)
                tape.append(_pris(iv, tv, _pos_of(row, k)))
            out = run_strip(tm, tape)
            for row, sym in enumerate(out):
                if sym not in COLORS:
                    raise ValueError("machine left a strip uncolored")
                want.add_monomer((i, -(t * k + row)), COLORS[sym])
    for i in range(n):
        for y in range(n - 1):
            want.set_bond((i, -y), (i, -y - 1), Bond.RIGID)
    for i in range(n - 1):
        for y in range(k):
            want.set_bond((i, -y), (i + 1, -y), Bond.RIGID)
    return Program("pattern", RuleSet(rules), initial,
                   expected_terminal=want,
                   metadata={"n": n, "strip": k})
