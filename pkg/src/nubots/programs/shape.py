"""Programmed shapes: carve an arbitrary computable pixel set out of a
square canvas.

For a canvas of side m = 2**q the program runs in five stages, all
emitted into one rule set (n = m*m throughout):

1. *Counter.*  The binary counter grows n backbone monomers, each with
   a column of p = 2q bit monomers hanging below it encoding its index.

2. *Column computation.*  When a backbone monomer finishes counting, a
   walker descends its column and climbs back up, converting the bits
   into machine-tape cells and accumulating the number of trailing one
   bits.  The trailing-ones count tells the monomer whether its index
   ends a canvas row (index = m-1 mod m), which the fold needs later.
   The pixel-membership machine then runs on the column, tape downward,
   reading the index most-significant bit first.  Its verdict (yes/no)
   bubbles to the top while the tape deletes itself bottom-up, leaving
   the bare backbone monomer holding a verdict and a turn flag.

3. *Completion sweep.*  A right-to-left wave over the backbone marks
   when every column has finished, so the fold never starts while
   column monomers are still in the way.

4. *Fold.*  A token walks the backbone, laying the first m monomers
   down as canvas row 0, then swinging the rest into a vertical chain
   below the row end and paying the chain out row by row in
   boustrophedon order.  Every movement keeps the pending chain
   hanging vertically below the frontier, in otherwise empty space.
   Settled monomers bond rigidly to all their settled neighbors.

5. *Carving.*  A broadcast from the last settled pixel releases the
   carvers.  Each region of no-monomers is consumed by depth-first
   walks rooted at its yes-adjacent members and deleted in post-order,
   so every intermediate configuration stays connected through intact
   parent chains down to the yes-pixels.

The terminal configuration is exactly the yes-pixel set, fully
rigid-bonded, up to translation.  If the yes-pixel set is empty or
disconnected the run never reaches the expected terminal (a carve
region with no yes-neighbor has no root); that surfaces as a
terminal-spec mismatch at run time, not as a generator error.
"""

from __future__ import annotations

from .. import grid
from ..model import Bond, Configuration
from ..rules import RuleSet, make_rule
from .counter import AX, DN, DONE, XA, bit, counter
from .program import Program
from .tm import BLANK, TMSpec, _cell, _head, emit_tm_rules, run_machine

NW = grid.DIRECTION_NAMES[(1, -1)]
#: ring order of the six neighbor directions used by the carving poll
DIRS = tuple(grid.DIRECTION_NAMES[v] for v in grid.DIRECTIONS)
#: settled monomer states: pre-broadcast and post-broadcast, yes and no
FIN = {"f.fin.Y": "Y", "f.fin.N": "N", "c.Y": "Y", "c.N": "N"}


def emit_column_rules(rules: list, tm: TMSpec, alphabet, q: int) -> None:
    """Per-column computation: bit walker, turn flag, machine run, and
    verdict cleanup.  All rules are vertical, so columns are
    independent."""
    r = make_rule
    cap = q + 1

    def w(b, cnt, fz):
        return f"m.W.{b}.{cnt}.{'T' if fz else 'F'}"

    for j in (0, 1):
        # the finished backbone monomer sends a walker down its column
        rules.append(r(DONE, bit(j), "r", DN, "m.go", f"m.D.{j}", "r", DN))
        for k in (0, 1):
            rules.append(r(f"m.D.{j}", bit(k), "r", DN,
                           bit(j), f"m.D.{k}", "r", DN))
        # at the bottom, turn around carrying the trailing-ones count
        cnt0, fz0 = (1, False) if j else (0, True)
        rules.append(r(f"m.D.{j}", None, "n", DN, w(j, cnt0, fz0), None,
                       "n", DN))
    for b in (0, 1):
        for cnt in range(cap + 1):
            for fz in (False, True):
                for k in (0, 1):
                    if fz or k == 0:
                        cnt2, fz2 = cnt, True if k == 0 else fz
                    else:
                        cnt2, fz2 = min(cnt + 1, cap), False
                    # climb one cell, converting the passed bit to tape
                    rules.append(r(bit(k), w(b, cnt, fz), "r", DN,
                                   w(k, cnt2, fz2), _cell(str(b)), "r", DN))
                flag = "T" if cnt >= q else "-"
                rules.append(r("m.go", w(b, cnt, fz), "r", DN,
                               f"m.flag.{flag}", _cell(str(b)), "r", DN))
    for flag in ("T", "-"):
        for sym in alphabet:
            rules.append(r(f"m.flag.{flag}", _cell(sym), "r", DN,
                           f"m.run.{flag}", _head(tm.start, sym), "r", DN))
    emit_tm_rules(rules, tm, alphabet, fwd=DN)
    # replace the halted head with a verdict carrier
    aboves = [_cell(s) for s in alphabet] + ["m.run.T", "m.run.-"]
    for halt, verdict in ((tm.accept, "Y"), (tm.reject, "N")):
        for sym in alphabet:
            for above in aboves:
                rules.append(r(above, _head(halt, sym), "r", DN,
                               above, f"m.v.{verdict}", "r", DN))
    for verdict in ("Y", "N"):
        v, wv = f"m.v.{verdict}", f"m.w.{verdict}"
        for sym in alphabet:
            rules += [
                # the verdict swaps upward past remaining tape cells,
                # and marks everything below it for deletion
                r(_cell(sym), v, "r", DN, v, "m.del", "r", DN),
                r(_cell(sym), wv, "r", DN, v, "m.del", "r", DN),
                r(v, _cell(sym), "r", DN, v, "m.del", "r", DN),
            ]
        rules += [
            r(v, "m.zz", "r", DN, v, None, "n", DN),
            r(v, None, "n", DN, wv, None, "n", DN),
        ]
        for flag in ("T", "-"):
            # the backbone monomer reads and absorbs the verdict
            rules.append(r(f"m.run.{flag}", wv, "r", DN,
                           f"f.P.{verdict}{flag}", None, "n", DN))
    for sym in alphabet:
        rules.append(r("m.del", _cell(sym), "r", DN, "m.del", "m.del",
                       "r", DN))
    rules += [
        # marked cells delete bottom-up; live tape never senses the
        # empty cell below it, only marked cells do
        r("m.del", None, "n", DN, "m.zz", None, "n", DN),
        r("m.del", "m.zz", "r", DN, "m.del", None, "n", DN),
    ]


def emit_fold_rules(rules: list) -> None:
    """Completion sweep plus the boustrophedon fold."""
    r = make_rule
    vfs = [v + f for v in "YN" for f in "T-"]
    for vf in vfs:
        rules += [
            # right-to-left completion sweep over the bare backbone
            r(f"f.P.{vf}", None, "n", AX, f"f.R.{vf}", None, "n", AX),
            # the left end starts the laying token
            r(None, f"f.R.{vf}", "n", AX, None, f"f.tW.{vf}", "n", AX),
            # verticalizing token reaches the far end and turns back
            r(f"f.V.{vf}", None, "n", AX, f"f.U.{vf}", None, "n", AX),
        ]
        for vf2 in vfs:
            rules += [
                r(f"f.P.{vf}", f"f.R.{vf2}", "r", AX,
                  f"f.R.{vf}", f"f.R.{vf2}", "r", AX),
                # swing the rest of the line one notch toward vertical;
                # a swung monomer transiently has an empty left cell, so
                # the first half-swing renames it out of the pending
                # state, keeping the token-start rule leftmost-only
                r(f"f.V.{vf}", f"f.R.{vf2}", "r", AX,
                  f"f.V2.{vf}", f"f.C.{vf2}", "r", NW),
                r(f"f.V2.{vf}", f"f.C.{vf2}", "r", NW,
                  f"f.Rv.{vf}", f"f.V.{vf2}", "r", DN),
                # the turn-back token climbs the finished chain
                r(f"f.Rv.{vf}", f"f.U.{vf2}", "r", DN,
                  f"f.U.{vf}", f"f.Rv.{vf2}", "r", DN),
            ]
    for v in "YN":
        for vf2 in vfs:
            rules += [
                # row 0 is already in place: walk and settle
                r(f"f.tW.{v}-", f"f.R.{vf2}", "r", AX,
                  f"f.fin.{v}", f"f.tW.{vf2}", "r", AX),
                # row end: swing the whole remainder below this corner
                r(f"f.tW.{v}T", f"f.R.{vf2}", "r", AX,
                  f"f.cv.{v}", f"f.R.{vf2}", "r", AX),
                r(f"f.cv.{v}", f"f.R.{vf2}", "r", AX,
                  f"f.cv2.{v}", f"f.C.{vf2}", "r", NW),
                r(f"f.cv2.{v}", f"f.C.{vf2}", "r", NW,
                  f"f.wt.{v}", f"f.V.{vf2}", "r", DN),
                r(f"f.wt.{v}", f"f.U.{vf2}", "r", DN,
                  f"f.fin.{v}", f"f.tL.{vf2}", "r", DN),
                # leftward rows: swing the chain head up-left and settle
                r(f"f.tL.{v}-", f"f.Rv.{vf2}", "r", DN,
                  f"f.fin.{v}", f"f.tL.{vf2}", "r", XA),
                r(f"f.tL.{v}T", f"f.Rv.{vf2}", "r", DN,
                  f"f.fin.{v}", f"f.tR.{vf2}", "r", DN),
                # rightward rows: two swings per monomer
                r(f"f.tR.{v}-", f"f.Rv.{vf2}", "r", DN,
                  f"f.tR2.{v}", f"f.Rv.{vf2}", "r", NW),
                r(f"f.tR2.{v}", f"f.Rv.{vf2}", "r", NW,
                  f"f.fin.{v}", f"f.tR.{vf2}", "r", AX),
                r(f"f.tR.{v}T", f"f.Rv.{vf2}", "r", DN,
                  f"f.fin.{v}", f"f.tL.{vf2}", "r", DN),
            ]
        for tok in ("tL", "tR"):
            # the last pixel settles directly into broadcast state
            rules.append(r(f"f.{tok}.{v}T", None, "n", DN,
                           f"c.{v}", None, "n", DN))
    # settled monomers bond rigidly to all settled neighbors; the
    # broadcast then releases the carvers over bonded or unbonded pairs
    updirs = (AX, grid.DIRECTION_NAMES[(0, 1)], grid.DIRECTION_NAMES[(-1, 1)])
    stable = sorted(FIN)
    for a in stable:
        for b in stable:
            for d in updirs:
                rules.append(r(a, b, "n", d, a, b, "r", d))
    # any carving-stage monomer relays the release to pending neighbors
    relayers = ["c.Y", "c.N", "c.d", "c.rd"] + [
        f"c.{pre}.{j}" for pre in ("s", "w", "r", "rw") for j in range(6)]
    for relay in relayers:
        for v2 in "YN":
            for bond in ("r", "n"):
                for d in DIRS:
                    rules.append(r(relay, f"f.fin.{v2}", bond, d,
                                   relay, f"c.{v2}", bond, d))


def emit_carve_rules(rules: list) -> None:
    """Depth-first carving of the no-pixels.

    Every no-monomer adjacent to a yes-monomer roots a depth-first
    walk of its no-region.  A walker scans its six neighbors in ring
    order: an unvisited no-monomer becomes its child (taking the
    token), anything else is skipped, and when the scan completes the
    monomer reports done and is deleted by the parent waiting on it
    (the root, by its anchoring yes-neighbor).  Deletion is therefore
    post-order: a deleted monomer has no live children and all its
    neighbors already scanned, so the survivors always stay connected
    through intact parent chains ending at yes-adjacent roots."""
    r = make_rule
    span = range(6)
    skip = (["c.Y", "c.d", "c.rd"]
            + [f"c.{pre}.{j}" for pre in ("s", "w", "r", "rw") for j in span])
    for k in span:
        d = DIRS[k]
        for scan, wait, done in (("c.s", "c.w", "c.d"),
                                 ("c.r", "c.rw", "c.rd")):
            cur = f"{scan}.{k}"
            nxt = f"{scan}.{k + 1}" if k < 5 else done
            rules.append(r(cur, None, "n", d, nxt, None, "n", d))
            for bond in ("r", "n"):
                # an unvisited no-monomer becomes this walker's child
                rules.append(r(cur, "c.N", bond, d,
                               f"{wait}.{k}", "c.s.0", bond, d))
                for other in skip:
                    rules.append(r(cur, other, bond, d, nxt, other, bond, d))
                # the finished child hands the token back and is removed
                rules.append(r(f"{wait}.{k}", "c.d", bond, d,
                               nxt, None, "n", d))
    for d in DIRS:
        for bond in ("r", "n"):
            rules += [
                # a no-monomer touching a yes-monomer roots a walk there
                r("c.N", "c.Y", bond, d, "c.r.0", "c.Y", bond, d),
                # the finished root is removed by its anchor
                r("c.rd", "c.Y", bond, d, None, "c.Y", "n", d),
            ]


def pixel_position(i: int, m: int) -> tuple[int, int]:
    """Canvas position of index i under the boustrophedon fold."""
    row, k = divmod(i, m)
    return (k if row % 2 == 0 else m - 1 - k, -row)


def lookup_tm(yes, p: int) -> TMSpec:
    """Machine reading p bits most-significant first and accepting
    exactly the indices in ``yes``."""
    delta = {}
    for depth in range(p):
        for val in range(1 << depth):
            prefix = format(val, f"0{depth}b") if depth else ""
            for b in "01":
                ext = prefix + b
                if depth == p - 1:
                    target = "yes" if int(ext, 2) in set(yes) else "no"
                else:
                    target = f"q{ext}"
                delta[(f"q{prefix}", b)] = (target, b, "R")
    return TMSpec(start="q", accept="yes", reject="no", delta=delta)


def constant_tm(accept: bool = True) -> TMSpec:
    """Machine accepting (or rejecting) every index immediately."""
    target = "yes" if accept else "no"
    delta = {("s", b): (target, b, "R") for b in "01"}
    return TMSpec(start="s", accept="yes", reject="no", delta=delta)


def shape(tm: TMSpec, n: int, expected_pixels=None) -> Program:
    """Program growing exactly the pixel set that ``tm`` accepts on a
    square canvas of n = m*m cells, m a power of two.

    ``tm`` reads a canvas index as its binary digits, most significant
    first, moving only rightward over them (it may use unbounded tape
    beyond).  ``expected_pixels`` optionally overrides the accepted
    index set used to build the expected terminal, skipping the
    reference interpreter.
    """
    p = n.bit_length() - 1
    if n < 4 or (1 << p) != n:
        raise ValueError("n must be a power of two, at least 4")
    if p % 2:
        raise ValueError("n must be a square (an even power of two)")
    q = p // 2
    m = 1 << q
    alphabet = sorted(tm.alphabet() | {"0", "1"})
    base = counter(p)
    rules = list(base.ruleset)
    emit_column_rules(rules, tm, alphabet, q)
    emit_fold_rules(rules)
    emit_carve_rules(rules)
    if expected_pixels is None:
        yes = {i for i in range(n)
               if run_machine(tm, format(i, f"0{p}b")).accepted}
    else:
        yes = set(expected_pixels)
    want = Configuration()
    pos = {pixel_position(i, m) for i in yes}
    for pt in pos:
        want.add_monomer(pt, "c.Y")
    for pt in pos:
        for d in ((1, 0), (0, 1), (-1, 1)):
            other = grid.add(pt, d)
            if other in pos:
                want.set_bond(pt, other, Bond.RIGID)
    return Program("shape", RuleSet(rules), base.initial,
                   expected_terminal=want,
                   metadata={"n": n, "side": m, "yes": sorted(yes)})
