import glob
import os
import warnings
from fractions import Fraction

import pytest

from ambiprob.dsl import (
    DslWarning,
    compile_protocol,
    parse,
    parse_event_text,
    parse_statement_text,
    render,
)
from ambiprob.engine import AtLeastOne, Claim, REJECT, Text, marginal, posterior
from ambiprob.errors import DslSyntaxError, EmptyPick, InvalidProbability, UnboundVariable
from ambiprob.model import AllMatch, And, CountAtLeast, Exists, Not, Sex, WorldConfig
from ambiprob.scenarios import build_scenario

TUE = 1
CFG = WorldConfig(7, 2)
PROC_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "ambiprob", "procs")

PROC_TO_ID = {
    "classic_selection": "classic-selection",
    "classic_coinflip": "classic-coinflip",
    "brag": "brag",
    "deemphasize": "deemphasize",
    "gn_dn": "gn-dn",
    "bc_dn": "bc-dn",
    "bc_tc": "bc-tc",
    "gn_tc": "gn-tc",
    "yesno": "yesno",
    "any_answer": "any-answer",
}


def proc_files():
    return sorted(glob.glob(os.path.join(PROC_DIR, "*.proc")))


def test_all_ten_builtin_files_present():
    names = {os.path.splitext(os.path.basename(p))[0] for p in proc_files()}
    assert names == set(PROC_TO_ID)


def test_parse_reference_gn_dn():
    src = "procedure gn_dn {\n  pick c;\n  say claim(sex(c), day(c));\n}\n"
    ast = parse(src)
    assert ast.name == "gn_dn"
    assert len(ast.body) == 2
    assert render(ast) == src


@pytest.mark.parametrize("path", proc_files(), ids=os.path.basename)
def test_round_trip_builtin_files(path):
    with open(path) as fh:
        ast = parse(fh.read())
    assert parse(render(ast)) == ast


@pytest.mark.parametrize("path", proc_files(), ids=os.path.basename)
def test_builtin_files_compile_to_constructor_kernels(path):
    name = os.path.splitext(os.path.basename(path))[0]
    with open(path) as fh:
        kernel = compile_protocol(parse(fh.read()), CFG)
    sc = build_scenario(PROC_TO_ID[name], CFG, p=Fraction(13, 27))
    assert kernel == sc.kernel


def test_compiled_bc_tc_posterior():
    with open(os.path.join(PROC_DIR, "bc_tc.proc")) as fh:
        kernel = compile_protocol(parse(fh.read()), CFG)
    rep = posterior(kernel, Claim(Sex.BOY, TUE), AllMatch(sex=Sex.BOY))
    assert rep.posterior == Fraction(13, 27)


def test_syntax_error_carries_position():
    with pytest.raises(DslSyntaxError) as exc:
        parse("procedure p {\n  say yes\n}\n")
    assert "3:1" in str(exc.value)


def test_unexpected_character():
    with pytest.raises(DslSyntaxError):
        parse("procedure p { say yes; } $")


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        parse("procedure p { say claim(sex(x), day(x)); }")


def test_variable_scope_does_not_escape_block():
    src = """
    procedure p {
      if exists(boy) {
        pick c where sex(c)=boy;
        say claim(sex(c));
      }
      say claim(sex(c));
    }
    """
    with pytest.raises(UnboundVariable):
        parse(src)


def test_require_must_come_first():
    with pytest.raises(DslSyntaxError):
        parse("procedure p { say yes; require exists(boy); }")


def test_require_rejects_child_tests():
    with pytest.raises(UnboundVariable):
        parse("procedure p { require sex(c)=boy; say yes; }")


def test_flip_probability_range():
    with pytest.raises(InvalidProbability):
        parse("procedure p { flip 3/2 { say yes; } else { say no; } }")


def test_fall_through_is_reject_with_warning():
    src = "procedure p { if all(boy) { say atleastone(boy); } }"
    with pytest.warns(DslWarning):
        kernel = compile_protocol(parse(src), CFG)
    m = marginal(kernel)
    assert m[AtLeastOne(Sex.BOY)] == Fraction(1, 4)
    assert m[REJECT] == Fraction(3, 4)


def test_explicit_reject_silences_warning():
    src = "procedure p { if all(boy) { say atleastone(boy); } else { reject; } }"
    with warnings.catch_warnings():
        warnings.simplefilter("error", DslWarning)
        compile_protocol(parse(src), CFG)


def test_empty_pick_is_a_diagnostic():
    src = "procedure p { pick c where sex(c)=boy; say claim(sex(c)); }"
    with pytest.raises(EmptyPick) as exc:
        compile_protocol(parse(src), CFG)
    assert len(exc.value.families) == 49  # the all-girl families


def test_constant_flip_marginal():
    src = "procedure p { flip 1/3 { say yes; } else { say no; } }"
    kernel = compile_protocol(parse(src), CFG)
    m = marginal(kernel)
    from ambiprob.engine import YesNo

    assert m[YesNo(True)] == Fraction(1, 3)
    assert m[YesNo(False)] == Fraction(2, 3)


def test_flip_symmetry():
    a = compile_protocol(
        parse("procedure p { flip 1/3 { say yes; } else { say no; } }"), CFG
    )
    b = compile_protocol(
        parse("procedure p { flip 2/3 { say no; } else { say yes; } }"), CFG
    )
    assert a == b


def test_pick_uniformity():
    src = "procedure p { pick c; say claim(sex(c), day(c)); }"
    kernel = compile_protocol(parse(src), CFG)
    for f, row in kernel.rows.items():
        k = len({(c.sex, c.day) for c in f})
        if k == 2:
            assert all(w == Fraction(1, 2) for w in row.values())
        else:
            assert row[Claim(f[0].sex, f[0].day)] == 1


def test_per_family_weights_account_for_all_paths():
    src = """
    procedure p {
      flip 1/4 {
        pick c;
        say claim(sex(c));
      } else {
        flip 1/2 { reject; } else { say text("fallback"); }
      }
    }
    """
    kernel = compile_protocol(parse(src), CFG)
    for row in kernel.rows.values():
        total = sum(row.values(), Fraction(0))
        assert total == Fraction(1, 4) + Fraction(3, 8)  # reject mass 3/8


def test_named_days_require_seven_day_week():
    src = "procedure p { require exists(boy, tue); say yes; }"
    compile_protocol(parse(src), CFG)
    with pytest.raises(DslSyntaxError):
        compile_protocol(parse(src), WorldConfig(3, 2))
    numeric = "procedure p { require exists(boy, d2); say yes; }"
    compile_protocol(parse(numeric), WorldConfig(3, 2))
    with pytest.raises(DslSyntaxError):
        compile_protocol(parse(numeric), WorldConfig(2, 2))


def test_render_normalizes_rationals():
    src = "procedure p { flip 2/4 { say yes; } else { say no; } }"
    assert "flip 1/2" in render(parse(src))


def test_render_preserves_nesting():
    src = """
    procedure p {
      if exists(boy) {
        flip 1/2 {
          if all(boy) { say yes; } else { say no; }
        } else {
          reject;
        }
      } else {
        reject;
      }
    }
    """
    ast = parse(src)
    assert parse(render(ast)) == ast


def test_pred_precedence_round_trip():
    src = "procedure p { if exists(boy) and (all(girl) or count(boy) >= 1) { say yes; } else { say no; } }"
    ast = parse(src)
    assert parse(render(ast)) == ast
    flat = "procedure p { if not all(girl) or all(boy) and exists(girl) { say yes; } else { say no; } }"
    ast2 = parse(flat)
    assert parse(render(ast2)) == ast2


def test_parse_statement_text():
    assert parse_statement_text("claim(boy,tue)", CFG) == Claim(Sex.BOY, TUE)
    assert parse_statement_text("claim(girl)", CFG) == Claim(Sex.GIRL, None)
    assert parse_statement_text('text("hello")', CFG) == Text("hello")
    with pytest.raises(UnboundVariable):
        parse_statement_text("claim(sex(c))", CFG)
    with pytest.raises(DslSyntaxError):
        parse_statement_text("claim(boy) extra", CFG)


def test_parse_event_text():
    assert parse_event_text("all(boy)", CFG) == AllMatch(sex=Sex.BOY)
    assert parse_event_text("not all(boy)", CFG) == Not(AllMatch(sex=Sex.BOY))
    assert parse_event_text("exists(boy,tue)", CFG) == Exists(Sex.BOY, TUE)
    assert parse_event_text("count(girl) >= 2", CFG) == CountAtLeast(2, Sex.GIRL)
    combined = parse_event_text("exists(boy) and not all(boy)", CFG)
    assert combined == And(Exists(Sex.BOY), Not(AllMatch(sex=Sex.BOY)))


def test_count_comparison_lowering():
    # count(boy) = 1 means exactly one boy
    q = parse_event_text("count(boy) = 1", CFG)
    from ambiprob.model import count_families

    assert count_families(CFG, q) == 98
    assert count_families(CFG, parse_event_text("count(boy) < 1", CFG)) == 49
    assert count_families(CFG, parse_event_text("count(boy) > 1", CFG)) == 49
    assert count_families(CFG, parse_event_text("count(boy) <= 1", CFG)) == 147
