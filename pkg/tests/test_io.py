import numpy as np
import pytest

from nubots import grid, io_render
from nubots.io_render import (FormatError, format_config, format_rule,
                              format_rules, format_tm, parse_config,
                              parse_rules, parse_tm, parse_trace,
                              render_ascii, render_svg)
from nubots.kinetics import run
from nubots.model import Bond, Configuration
from nubots.rules import EMPTY, RuleSet, make_rule

from oracles import random_config


def test_config_round_trip_is_byte_exact():
    rng = np.random.default_rng(12)
    for _ in range(50):
        c = random_config(rng)
        text = format_config(c)
        again = parse_config(text)
        assert again == c
        assert format_config(again) == text


def test_config_parser_details():
    text = """\
# a comment
nubot-config v1
M 0 0 a   # trailing comment
M 1 0 b

B 0 0 1 0 f
"""
    c = parse_config(text)
    assert c.monomers == {(0, 0): "a", (1, 0): "b"}
    assert c.bond((0, 0), (1, 0)) is Bond.FLEXIBLE


@pytest.mark.parametrize("text", [
    "",
    "wrong header v1\nM 0 0 a",
    "nubot-config v1\nM 0 0",
    "nubot-config v1\nM 0 0 -",
    "nubot-config v1\nM zero 0 a",
    "nubot-config v1\nB 0 0 1 0 r",          # bond without monomers
    "nubot-config v1\nM 0 0 a\nM 5 5 b\nB 0 0 5 5 r",  # non-adjacent
    "nubot-config v1\nM 0 0 a\nM 1 0 b\nB 0 0 1 0 x",
    "nubot-config v1\nX 1 2 3",
])
def test_config_parser_rejects_garbage(text):
    with pytest.raises(FormatError):
        parse_config(text)


def _random_ruleset(rng, n=20):
    rules = []
    dirs = list(grid.DIRECTION_NAMES.values())
    while len(rules) < n:
        kind = rng.integers(4)
        u = dirs[int(rng.integers(6))]
        try:
            if kind == 0:  # movement
                up = grid.DIRECTION_NAMES[
                    grid.adjacent_directions(grid.NAMED_DIRECTIONS[u])[
                        int(rng.integers(2))]]
                r = make_rule("a", "b", "r", u, "c", "d", "f", up)
            elif kind == 1:  # appearance
                r = make_rule("a", None, "n", u, "a", "b", "r", u)
            elif kind == 2:  # disappearance
                r = make_rule("a", "b", "f", u, None, "b", "n", u)
            else:
                r = make_rule("a", "b", None, u, "e", "b", "r", u)
            rules.append(r)
        except Exception:
            continue
    return RuleSet(rules)


def test_rules_round_trip_is_byte_exact():
    rng = np.random.default_rng(5)
    rs = _random_ruleset(rng)
    text = format_rules(rs)
    again = parse_rules(text)
    assert len(again) == len(rs)
    for a, b in zip(again, rs):
        assert (a.s1, a.s2, a.b, a.u, a.s1p, a.s2p, a.bp, a.up) == \
            (b.s1, b.s2, b.b, b.u, b.s1p, b.s2p, b.bp, b.up)
    assert format_rules(again) == text


def test_rule_line_format():
    r = make_rule("a", None, "n", "+w", "a", "b", "r", "+w")
    assert format_rule(r) == "a - n +w -> a b r +w"
    mv = make_rule("s1", "s2", "r", "+x", "s1", "s2", "r", "-w")
    assert format_rule(mv) == "s1 s2 r +x -> s1 s2 r -w"


@pytest.mark.parametrize("text", [
    "",
    "nubot-config v1\n",
    "nubot-rules v1\na b r +x - a b r +x",      # wrong arrow
    "nubot-rules v1\na b r +x -> a b r",        # short
    "nubot-rules v1\na b z +x -> a b r +x",     # bad bond
    "nubot-rules v1\na b r +z -> a b r +z",     # bad direction
    "nubot-rules v1\n- - n +x -> a b r +x",     # both sides empty
    "nubot-rules v1\na b r +x -> a b r -x",     # illegal movement
])
def test_rules_parser_rejects_garbage(text):
    with pytest.raises(FormatError):
        parse_rules(text)


def test_tm_round_trip():
    text = """\
tm v1
START q0
ACCEPT qa
REJECT qr
D q0 0 q0 0 R
D q0 1 q1 0 R
D q1 _ qa _ L
"""
    tm = parse_tm(text)
    assert tm.start == "q0" and tm.accept == "qa" and tm.reject == "qr"
    assert tm.delta[("q0", "1")] == ("q1", "0", "R")
    assert parse_tm(format_tm(tm)).delta == tm.delta
    assert format_tm(parse_tm(format_tm(tm))) == format_tm(tm)


@pytest.mark.parametrize("text", [
    "tm v1\nSTART q0\nACCEPT qa",                      # missing REJECT
    "tm v1\nSTART q0\nACCEPT qa\nREJECT qr\nD q0 0 q1 0 X",
    "tm v1\nSTART q0\nACCEPT qa\nREJECT qr\nD q0 0 q1 0 R\nD q0 0 q2 1 L",
])
def test_tm_parser_rejects_garbage(text):
    with pytest.raises(FormatError):
        parse_tm(text)


def test_trace_parse_recovers_header_and_events():
    rs = RuleSet([make_rule("a", None, "n", "+x", "a", "a", "r", "+x")])
    res = run(Configuration({(0, 0): "a"}), rs, seed=9, max_events=5,
              collect_trace=True)
    header, events = parse_trace("\n".join(res.trace))
    assert header["seed"] == "9"
    assert header["agitation"] == "0"
    assert header["rules"].startswith("sha256:")
    assert len(events) == 5
    assert events[0]["kind"] == "nonmove" and events[0]["rule"] == "0"
    ts = [float(e["t"]) for e in events]
    assert ts == sorted(ts)


def test_render_ascii_shape():
    c = Configuration({(0, 0): "a", (1, 0): "b", (0, 1): "c"})
    art = render_ascii(c)
    lines = art.splitlines()
    assert len(lines) == 2
    assert lines[0].strip() == "c"
    assert lines[1] == "ab"


def test_render_svg_contains_all_pieces():
    rng = np.random.default_rng(3)
    c = random_config(rng)
    svg = render_svg(c)
    assert svg.count("<circle") == len(c)
    assert svg.count("<line") == len(c.bonds)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
