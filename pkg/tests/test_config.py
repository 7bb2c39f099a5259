"""Config parsing, shipped-scenario equivalence with the programmatic
builders, round-trip emission, and error reporting with line numbers."""

import textwrap
from fractions import Fraction as Q

import pytest

import scen
from lefbench.config import (ScenarioConfig, WrapParams, emit_config,
                             load_config, parse_config, shipped_scenario)
from lefbench.errors import ConfigError, Inconsistent, LefbenchError


def _doc(body: str) -> str:
    return textwrap.dedent(body).lstrip("\n")


BASE = _doc("""
    [disc d]
    puncture p = 0 0

    [fiber F]
    dim = 2
    homology 0 = 1
    homology 1 = 1
    class c = 1

    [fibration f]
    disc = d
    fiber = F
    reference-angle = 0
    crit p = c | 1/2

    [run]
    fibration = f
    """)


# --------------------------------------------------------------------------
# shipped scenarios match the programmatic builders
# --------------------------------------------------------------------------

@pytest.mark.parametrize("variant", ["W0", "W1"])
def test_shipped_main_scenarios(variant):
    cfg = load_config(shipped_scenario(variant))
    assert cfg.fibration == scen.full_main_fibration(variant)
    assert cfg.name == f"main-{variant}"
    assert cfg.towers == (("b", "b"), ("a", "a"), ("a", "b"))
    assert cfg.wrap == WrapParams(Q(1, 64), Q(1, 128), (0, 1, 2, 3))


def test_shipped_ts3():
    cfg = load_config(shipped_scenario("ts3"))
    assert cfg.fibration == scen.ts3_fibration()
    assert cfg.towers == ()
    assert cfg.wrap == WrapParams()


def test_shipped_empty_fibration():
    cfg = load_config(shipped_scenario("empty-fibration"))
    assert cfg.fibration == scen.empty_fibration()


def test_shipped_scenario_lookup():
    assert shipped_scenario("W0").name == "W0.cfg"
    with pytest.raises(ConfigError):
        shipped_scenario("w7")


# --------------------------------------------------------------------------
# round trip
# --------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["W0", "W1", "ts3", "empty-fibration"])
def test_round_trip(name):
    cfg = load_config(shipped_scenario(name))
    text = emit_config(cfg)
    again = parse_config(text, source=f"emitted-{name}")
    assert again == cfg
    # and emission is a fixed point
    assert emit_config(again) == text


def test_base_doc_parses():
    cfg = parse_config(BASE)
    assert cfg.name == "f"
    assert len(cfg.fibration.crits) == 1
    assert cfg.fibration.oracle is None
    assert parse_config(emit_config(cfg)) == cfg


# --------------------------------------------------------------------------
# errors carry the config line
# --------------------------------------------------------------------------

def _expect_error(text, needle, lineno=None, exc=ConfigError, source="t.cfg"):
    with pytest.raises(exc) as e:
        parse_config(_doc(text), source=source)
    msg = str(e.value)
    assert needle in msg, msg
    if lineno is not None:
        assert f"{source}:{lineno}:" in msg, msg


def test_float_rejected():
    _expect_error("""
        [disc d]
        puncture p = 0.5 0
        """, "not an exact rational", lineno=2)


def test_zero_denominator():
    _expect_error("""
        [disc d]
        puncture p = 1/0 0
        """, "zero denominator", lineno=2)


def test_unknown_section_kind():
    _expect_error("""
        [discs d]
        """, "unknown section kind", lineno=1)


def test_content_before_section():
    _expect_error("""
        puncture p = 0 0
        """, "before the first section", lineno=1)


def test_missing_equals():
    _expect_error("""
        [disc d]
        puncture p 0 0
        """, "expected 'key = value'", lineno=2)


def test_duplicate_key():
    _expect_error("""
        [disc d]
        puncture p = 0 0
        puncture p = 1/4 0
        """, "duplicate key", lineno=3)


def test_missing_provenance():
    _expect_error(BASE + "\n".join([
        "[oracle f]",
        "label c = sphere",
        "rank c c = 2",
    ]), "provenance", lineno=20)


def test_malformed_relation():
    _expect_error(BASE + "\n".join([
        "[oracle f]",
        "label c = sphere",
        "relation = tangent c c !assumed x",
    ]), "relation is", lineno=20)


def test_bad_label_value():
    _expect_error(BASE + "[oracle f]\nlabel c = torus\n",
                  "'sphere' or 'plain'", lineno=19)


def test_unknown_disc_reference():
    _expect_error(BASE.replace("disc = d", "disc = e"),
                  "unknown disc", lineno=10)


def test_total_space_must_point_backwards():
    _expect_error(BASE.replace("fiber = F", "fiber = total-space g"),
                  "declared earlier", lineno=10)


def test_crit_over_unknown_puncture():
    _expect_error(BASE.replace("crit p = c | 1/2", "crit q = c | 1/2"),
                  "unknown puncture", lineno=14, exc=LefbenchError)


def test_missing_run_section():
    text = BASE.split("[run]")[0]
    _expect_error(text, "missing [run]")


def test_run_names_unknown_fibration():
    # the error cites the [run] header line
    _expect_error(BASE.replace("fibration = f", "fibration = g"),
                  "unknown fibration", lineno=16)


def test_duplicate_run_and_wrap_sections():
    _expect_error(BASE + "[run]\n", "duplicate [run]", lineno=18)
    _expect_error(BASE + "[wrap]\n[wrap]\n", "duplicate [wrap]", lineno=19)


def test_bad_tower_token():
    text = BASE.replace("fibration = f", "fibration = f\ntowers = p;p")
    _expect_error(text, "not of the form x:y", lineno=18)


def test_wrap_guards():
    _expect_error(BASE + "[wrap]\ndelta = 1/64\nbend = 1/2\n",
                  "0 < bend < delta", lineno=18)
    _expect_error(BASE + "[wrap]\nlevels = 1 1\n", "distinct nonnegative",
                  lineno=19)


def test_delta_must_clear_endpoint_gaps():
    # boundary endpoints at 0 (reference) and 1/2 leave a gap of 1/2
    _expect_error(BASE + "[wrap]\ndelta = 1/2\nbend = 1/4\n",
                  "reaches the angular gap")


def test_objects_for_unknown_fibration():
    _expect_error(BASE + "[objects g]\nthimble t = crit p\n",
                  "unknown fibration 'g'", lineno=18)


def test_oracle_for_unknown_fibration():
    _expect_error(BASE + "[oracle g]\nlabel c = sphere\n",
                  "unknown fibration 'g'", lineno=18)


def test_thimble_of_unknown_crit():
    _expect_error(BASE + "[objects f]\nthimble t = crit q\n",
                  "no critical value over puncture", lineno=19)


def test_matching_needs_crits_at_both_ends():
    text = _doc("""
        [disc d]
        puncture p = 0 0
        puncture q = 1/4 0

        [fiber F]
        dim = 2
        homology 0 = 1
        homology 1 = 1
        class c = 1

        [fibration f]
        disc = d
        fiber = F
        reference-angle = 0
        crit p = c | 1/2

        [objects f]
        matching m = p q

        [run]
        fibration = f
        """)
    _expect_error(text, "no critical value over puncture 'q'", lineno=18)


def test_inconsistent_oracle_keeps_type_and_gains_line():
    text = BASE + "\n".join([
        "[oracle f]",
        "label c = sphere",
        "rank c c = 1 !assumed broken",
    ])
    with pytest.raises(Inconsistent) as e:
        parse_config(_doc(text), source="t.cfg")
    assert "t.cfg:18:" in str(e.value)


def test_unreadable_file():
    with pytest.raises(ConfigError) as e:
        load_config("/nonexistent/nowhere.cfg")
    assert "cannot read config" in str(e.value)
