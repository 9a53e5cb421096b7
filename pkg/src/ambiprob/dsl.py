"""A small text language for disclosure procedures.

Grammar (informally)::

    procedure NAME {
      require <pred>;            # optional, leading only; lowered to pre-filter
      if <pred> { ... } else { ... }
      pick VAR [where sex(VAR)=boy | day(VAR)=tue];
      flip 1/2 { ... } else { ... }
      say claim(boy, tue) | atleastone(boy) | twoofakind(girl)
          | proudof(girl) | yes | no | text("...");
      reject;
    }

Compilation is exact: every flip branch and uniform pick is expanded
symbolically into rational path weights; nothing is sampled. A path that falls
off the end of the procedure is an implicit reject (with a warning).
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import model
from .engine import (
    AtLeastOne,
    Claim,
    ProtocolKernel,
    ProudOf,
    Statement,
    Text,
    TwoOfAKind,
    YesNo,
)
from .errors import DslSyntaxError, EmptyPick, InvalidProbability, UnboundVariable
from .model import (
    AllMatch,
    And,
    CountAtLeast,
    Exists,
    Family,
    Not,
    QueryPredicate,
    Sex,
    WorldConfig,
    enumerate_families,
    eval_query,
    family_str,
)

DAY_BY_NAME = {name: i for i, name in enumerate(model.DAY_NAMES)}


class DslWarning(UserWarning):
    """Compiler warnings (currently: implicit reject on fall-through)."""


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DayLit:
    """A day literal; named days render as mon..sun, others as d<N>."""

    value: int
    named: bool = False


@dataclass(frozen=True)
class PExists:
    sex: Sex | None = None
    day: DayLit | None = None


@dataclass(frozen=True)
class PCount:
    sex: Sex
    op: str  # one of >= <= > < =
    n: int


@dataclass(frozen=True)
class PAll:
    sex: Sex | None = None
    day: DayLit | None = None


@dataclass(frozen=True)
class PChildTest:
    var: str
    kind: str  # "sex" or "day"
    sex: Sex | None = None
    day: DayLit | None = None


@dataclass(frozen=True)
class PAnd:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class POr:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class PNot:
    inner: "Pred"


Pred = PExists | PCount | PAll | PChildTest | PAnd | POr | PNot


@dataclass(frozen=True)
class VarSex:
    var: str


@dataclass(frozen=True)
class VarDay:
    var: str


SexArg = Sex | VarSex
DayArg = DayLit | VarDay


@dataclass(frozen=True)
class EClaim:
    sex: SexArg
    day: DayArg | None = None


@dataclass(frozen=True)
class EAtLeastOne:
    sex: Sex


@dataclass(frozen=True)
class ETwoOfAKind:
    sex: Sex


@dataclass(frozen=True)
class EProudOf:
    sex: Sex


@dataclass(frozen=True)
class EYesNo:
    answer: bool


@dataclass(frozen=True)
class EText:
    label: str


StmtExpr = EClaim | EAtLeastOne | ETwoOfAKind | EProudOf | EYesNo | EText


@dataclass(frozen=True)
class If:
    pred: Pred
    then: tuple["Stmt", ...]
    els: tuple["Stmt", ...] | None = None


@dataclass(frozen=True)
class Pick:
    var: str
    where: PChildTest | None = None
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Flip:
    prob: Fraction
    then: tuple["Stmt", ...]
    els: tuple["Stmt", ...]


@dataclass(frozen=True)
class Say:
    expr: StmtExpr
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Reject:
    pass


Stmt = If | Pick | Flip | Say | Reject


@dataclass(frozen=True)
class ProtocolAst:
    name: str
    requires: tuple[Pred, ...]
    body: tuple[Stmt, ...]


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<string>"(?:[^"\\]|\\.)*")
    | (?P<int>\d+)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<op><=|>=|[{}();,=<>/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "string" | "op" | "eof"
    text: str
    span: SourceSpan


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise DslSyntaxError(
                f"unexpected character {source[pos]!r}", SourceSpan(line, col)
            )
        text = m.group(0)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, SourceSpan(line, col, len(text))))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(line, col, 0)))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_SEXES = {"boy": Sex.BOY, "girl": Sex.GIRL}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, expected: str):
        tok = self.cur
        shown = tok.text if tok.kind != "eof" else "end of input"
        raise DslSyntaxError(f"expected {expected}, found {shown!r}", tok.span)

    def expect(self, text: str) -> Token:
        if self.cur.text != text:
            self.fail(f"'{text}'")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.cur.text == text:
            self.advance()
            return True
        return False

    def expect_ident(self, what="identifier") -> Token:
        if self.cur.kind != "ident":
            self.fail(what)
        return self.advance()

    # -- entry points -------------------------------------------------------

    def protocol(self) -> ProtocolAst:
        self.expect("procedure")
        name = self.expect_ident("procedure name").text
        self.expect("{")
        requires = []
        while self.cur.text == "require":
            self.advance()
            requires.append(self.pred())
            self.expect(";")
        body = []
        while self.cur.text != "}":
            if self.cur.text == "require":
                raise DslSyntaxError(
                    "'require' is only allowed before other statements",
                    self.cur.span,
                )
            body.append(self.stmt())
        self.expect("}")
        if self.cur.kind != "eof":
            self.fail("end of input")
        return ProtocolAst(name, tuple(requires), tuple(body))

    def block(self) -> tuple[Stmt, ...]:
        self.expect("{")
        stmts = []
        while self.cur.text != "}":
            stmts.append(self.stmt())
        self.expect("}")
        return tuple(stmts)

    def stmt(self) -> Stmt:
        tok = self.cur
        if tok.text == "if":
            self.advance()
            pred = self.pred()
            then = self.block()
            els = self.block() if self.accept("else") else None
            return If(pred, then, els)
        if tok.text == "pick":
            self.advance()
            var = self.expect_ident("variable name").text
            where = None
            if self.accept("where"):
                where = self.child_test(expect_var=var)
            self.expect(";")
            return Pick(var, where, span=tok.span)
        if tok.text == "flip":
            self.advance()
            prob = self.rational()
            then = self.block()
            self.expect("else")
            els = self.block()
            return Flip(prob, then, els)
        if tok.text == "say":
            self.advance()
            expr = self.stmt_expr()
            self.expect(";")
            return Say(expr, span=tok.span)
        if tok.text == "reject":
            self.advance()
            self.expect(";")
            return Reject()
        self.fail("a statement (if/pick/flip/say/reject)")

    # -- pieces -------------------------------------------------------------

    def rational(self) -> Fraction:
        span = self.cur.span
        if self.cur.kind != "int":
            self.fail("a rational literal")
        num = int(self.advance().text)
        den = 1
        if self.accept("/"):
            if self.cur.kind != "int":
                self.fail("a denominator")
            den = int(self.advance().text)
        if den == 0:
            raise DslSyntaxError("zero denominator", span)
        value = Fraction(num, den)
        if not 0 <= value <= 1:
            raise InvalidProbability(f"probability {value} outside [0, 1]")
        return value

    def sex_or_day(self) -> tuple[Sex | None, DayLit | None]:
        tok = self.cur
        if tok.kind == "ident" and tok.text in _SEXES:
            self.advance()
            return _SEXES[tok.text], None
        day = self.try_day()
        if day is not None:
            return None, day
        self.fail("'boy', 'girl', or a day")

    def try_day(self) -> DayLit | None:
        tok = self.cur
        if tok.kind != "ident":
            return None
        if tok.text in DAY_BY_NAME:
            self.advance()
            return DayLit(DAY_BY_NAME[tok.text], named=True)
        m = re.fullmatch(r"d(\d+)", tok.text)
        if m:
            self.advance()
            return DayLit(int(m.group(1)), named=False)
        return None

    def child_test(self, expect_var: str | None = None) -> PChildTest:
        tok = self.cur
        if tok.text not in ("sex", "day"):
            self.fail("'sex(var)=...' or 'day(var)=...'")
        kind = self.advance().text
        self.expect("(")
        var = self.expect_ident("variable name").text
        self.expect(")")
        self.expect("=")
        if expect_var is not None and var != expect_var:
            raise DslSyntaxError(
                f"'where' clause must test the picked variable '{expect_var}'",
                tok.span,
            )
        if kind == "sex":
            if self.cur.text not in _SEXES:
                self.fail("'boy' or 'girl'")
            return PChildTest(var, "sex", sex=_SEXES[self.advance().text])
        day = self.try_day()
        if day is None:
            self.fail("a day literal")
        return PChildTest(var, "day", day=day)

    def pred(self) -> Pred:
        left = self.pred_and()
        while self.accept("or"):
            left = POr(left, self.pred_and())
        return left

    def pred_and(self) -> Pred:
        left = self.pred_atom()
        while self.accept("and"):
            left = PAnd(left, self.pred_atom())
        return left

    def pred_atom(self) -> Pred:
        tok = self.cur
        if self.accept("not"):
            return PNot(self.pred_atom())
        if self.accept("("):
            inner = self.pred()
            self.expect(")")
            return inner
        if tok.text == "exists":
            self.advance()
            self.expect("(")
            sex, day = self.sex_or_day()
            if self.accept(","):
                sex2, day2 = self.sex_or_day()
                sex = sex if sex2 is None else sex2 if sex is None else self.fail("a day")
                day = day if day2 is None else day2 if day is None else self.fail("a sex")
            self.expect(")")
            return PExists(sex, day)
        if tok.text == "all":
            self.advance()
            self.expect("(")
            sex, day = self.sex_or_day()
            self.expect(")")
            return PAll(sex, day)
        if tok.text == "count":
            self.advance()
            self.expect("(")
            if self.cur.text not in _SEXES:
                self.fail("'boy' or 'girl'")
            sex = _SEXES[self.advance().text]
            self.expect(")")
            op = self.cur.text
            if op not in (">=", "<=", ">", "<", "="):
                self.fail("a comparison operator")
            self.advance()
            if self.cur.kind != "int":
                self.fail("an integer")
            n = int(self.advance().text)
            return PCount(sex, op, n)
        if tok.text in ("sex", "day"):
            return self.child_test()
        self.fail("a predicate")

    def stmt_expr(self) -> StmtExpr:
        tok = self.cur
        if tok.text == "claim":
            self.advance()
            self.expect("(")
            sex = self.sex_arg()
            day = None
            if self.accept(","):
                day = self.day_arg()
            self.expect(")")
            return EClaim(sex, day)
        if tok.text in ("atleastone", "twoofakind", "proudof"):
            kind = self.advance().text
            self.expect("(")
            if self.cur.text not in _SEXES:
                self.fail("'boy' or 'girl'")
            sex = _SEXES[self.advance().text]
            self.expect(")")
            cls = {"atleastone": EAtLeastOne, "twoofakind": ETwoOfAKind, "proudof": EProudOf}
            return cls[kind](sex)
        if tok.text == "yes":
            self.advance()
            return EYesNo(True)
        if tok.text == "no":
            self.advance()
            return EYesNo(False)
        if tok.text == "text":
            self.advance()
            self.expect("(")
            if self.cur.kind != "string":
                self.fail("a string literal")
            raw = self.advance().text
            self.expect(")")
            label = raw[1:-1].replace('\\"', '"').replace("\\\\", "\\")
            return EText(label)
        self.fail("a statement expression")

    def sex_arg(self) -> SexArg:
        if self.cur.text in _SEXES:
            return _SEXES[self.advance().text]
        if self.cur.text == "sex":
            self.advance()
            self.expect("(")
            var = self.expect_ident("variable name").text
            self.expect(")")
            return VarSex(var)
        self.fail("a sex or 'sex(var)'")

    def day_arg(self) -> DayArg:
        day = self.try_day()
        if day is not None:
            return day
        if self.cur.text == "day":
            self.advance()
            self.expect("(")
            var = self.expect_ident("variable name").text
            self.expect(")")
            return VarDay(var)
        self.fail("a day or 'day(var)'")


def _check_bindings(stmts: tuple[Stmt, ...], bound: frozenset[str]) -> None:
    """Static scope check: a pick binds to the end of its enclosing block."""

    def used_vars(expr: StmtExpr):
        if isinstance(expr, EClaim):
            if isinstance(expr.sex, VarSex):
                yield expr.sex.var
            if isinstance(expr.day, VarDay):
                yield expr.day.var

    def pred_vars(p: Pred):
        match p:
            case PChildTest(var=v):
                yield v
            case PAnd(left=a, right=b) | POr(left=a, right=b):
                yield from pred_vars(a)
                yield from pred_vars(b)
            case PNot(inner=i):
                yield from pred_vars(i)

    for st in stmts:
        match st:
            case Pick(var=v):
                bound = bound | {v}
            case Say(expr=e, span=sp):
                for v in used_vars(e):
                    if v not in bound:
                        raise UnboundVariable(f"variable '{v}' is not bound by a pick", sp)
            case If(pred=p, then=t, els=e):
                for v in pred_vars(p):
                    if v not in bound:
                        raise UnboundVariable(f"variable '{v}' is not bound by a pick")
                _check_bindings(t, bound)
                if e is not None:
                    _check_bindings(e, bound)
            case Flip(then=t, els=e):
                _check_bindings(t, bound)
                _check_bindings(e, bound)
            case Reject():
                pass


def parse(source: str) -> ProtocolAst:
    """Parse a procedure; raises DslSyntaxError / UnboundVariable on bad input."""
    ast = _Parser(tokenize(source)).protocol()
    for pred in ast.requires:
        for _ in _pred_requires_no_vars(pred):
            raise UnboundVariable(
                "child-variable tests are not allowed in 'require'"
            )
    _check_bindings(ast.body, frozenset())
    return ast


def _pred_requires_no_vars(p: Pred):
    match p:
        case PChildTest():
            yield p
        case PAnd(left=a, right=b) | POr(left=a, right=b):
            yield from _pred_requires_no_vars(a)
            yield from _pred_requires_no_vars(b)
        case PNot(inner=i):
            yield from _pred_requires_no_vars(i)


# ---------------------------------------------------------------------------
# Compiler
# ---------------------------------------------------------------------------

def _day_value(day: DayLit, cfg: WorldConfig) -> int:
    if day.named and cfg.week_length != 7:
        raise DslSyntaxError(
            f"named day '{model.DAY_NAMES[day.value]}' requires a 7-day week; "
            f"use d<N> for week_length={cfg.week_length}"
        )
    if not 0 <= day.value < cfg.week_length:
        raise DslSyntaxError(f"day {day.value} out of range for d={cfg.week_length}")
    return day.value


def pred_to_query(p: Pred, cfg: WorldConfig) -> QueryPredicate:
    """Lower a variable-free DSL predicate to an engine event predicate."""
    match p:
        case PExists(sex=s, day=d):
            return Exists(s, None if d is None else _day_value(d, cfg))
        case PAll(sex=s, day=d):
            return AllMatch(s, None if d is None else _day_value(d, cfg))
        case PCount(sex=s, op=op, n=n):
            match op:
                case ">=":
                    return CountAtLeast(n, s)
                case ">":
                    return CountAtLeast(n + 1, s)
                case "<=":
                    return Not(CountAtLeast(n + 1, s))
                case "<":
                    return Not(CountAtLeast(n, s))
                case "=":
                    return And(CountAtLeast(n, s), Not(CountAtLeast(n + 1, s)))
        case PAnd(left=a, right=b):
            return And(pred_to_query(a, cfg), pred_to_query(b, cfg))
        case POr(left=a, right=b):
            return model.Or(pred_to_query(a, cfg), pred_to_query(b, cfg))
        case PNot(inner=i):
            return Not(pred_to_query(i, cfg))
        case PChildTest():
            raise UnboundVariable("child-variable tests need a bound pick variable")
    raise TypeError(f"not a predicate: {p!r}")


def _eval_pred(p: Pred, f: Family, env: dict[str, int], cfg: WorldConfig) -> bool:
    match p:
        case PChildTest(var=v, kind=kind, sex=s, day=d):
            c = f[env[v]]
            if kind == "sex":
                return c.sex == s
            return c.day == _day_value(d, cfg)
        case PAnd(left=a, right=b):
            return _eval_pred(a, f, env, cfg) and _eval_pred(b, f, env, cfg)
        case POr(left=a, right=b):
            return _eval_pred(a, f, env, cfg) or _eval_pred(b, f, env, cfg)
        case PNot(inner=i):
            return not _eval_pred(i, f, env, cfg)
        case _:
            return eval_query(pred_to_query(p, cfg), f)


def _resolve_stmt(expr: StmtExpr, f: Family, env: dict[str, int], cfg: WorldConfig) -> Statement:
    match expr:
        case EClaim(sex=s, day=d):
            sex = f[env[s.var]].sex if isinstance(s, VarSex) else s
            if d is None:
                day = None
            elif isinstance(d, VarDay):
                day = f[env[d.var]].day
            else:
                day = _day_value(d, cfg)
            return Claim(sex, day)
        case EAtLeastOne(sex=s):
            return AtLeastOne(s)
        case ETwoOfAKind(sex=s):
            return TwoOfAKind(s)
        case EProudOf(sex=s):
            return ProudOf(s)
        case EYesNo(answer=a):
            return YesNo(a)
        case EText(label=label):
            return Text(label)
    raise TypeError(f"not a statement expression: {expr!r}")


_REJECT = object()
_FALLTHROUGH = object()


def compile_protocol(ast: ProtocolAst, cfg: WorldConfig) -> ProtocolKernel:
    """Exact lowering: expand every flip and pick into rational path weights."""
    pre_filter: QueryPredicate | None = None
    for p in ast.requires:
        q = pred_to_query(p, cfg)
        pre_filter = q if pre_filter is None else And(pre_filter, q)

    empty_pick_families: list[tuple[Family, Pick]] = []
    fell_through = False

    def run(f, stmts, i, env, weight):
        """Yield (outcome, weight) pairs; outcome is a Statement, _REJECT, or
        _FALLTHROUGH (end of block reached; the caller decides what that means)."""
        if i == len(stmts):
            yield _FALLTHROUGH, weight
            return
        st = stmts[i]
        match st:
            case Say(expr=e):
                yield _resolve_stmt(e, f, env, cfg), weight
            case Reject():
                yield _REJECT, weight
            case Pick(var=v, where=w):
                if w is None:
                    matching = list(range(len(f)))
                else:
                    matching = [
                        j for j in range(len(f))
                        if _eval_pred(w, f, {**env, v: j}, cfg)
                    ]
                if not matching:
                    empty_pick_families.append((f, st))
                    yield _REJECT, weight
                    return
                share = weight / len(matching)
                for j in matching:
                    yield from run(f, stmts, i + 1, {**env, v: j}, share)
            case If(pred=p, then=t, els=e):
                branch = t if _eval_pred(p, f, env, cfg) else e
                if branch is None:
                    yield from run(f, stmts, i + 1, env, weight)
                    return
                for outcome, w in run(f, branch, 0, env, weight):
                    if outcome is _FALLTHROUGH:
                        yield from run(f, stmts, i + 1, env, w)
                    else:
                        yield outcome, w
            case Flip(prob=p, then=t, els=e):
                for branch, bw in ((t, weight * p), (e, weight * (1 - p))):
                    if bw == 0:
                        continue
                    for outcome, w in run(f, branch, 0, env, bw):
                        if outcome is _FALLTHROUGH:
                            yield from run(f, stmts, i + 1, env, w)
                        else:
                            yield outcome, w

    rows: dict[Family, dict[Statement, Fraction]] = {}
    for f in enumerate_families(cfg):
        if pre_filter is not None and not eval_query(pre_filter, f):
            continue
        row: dict[Statement, Fraction] = {}
        for outcome, w in run(f, ast.body, 0, {}, Fraction(1)):
            if outcome is _FALLTHROUGH and w > 0:
                fell_through = True
            if outcome is _REJECT or outcome is _FALLTHROUGH or w == 0:
                continue
            row[outcome] = row.get(outcome, Fraction(0)) + w
        rows[f] = row

    if empty_pick_families:
        shown = ", ".join(family_str(f) for f, _ in empty_pick_families[:5])
        raise EmptyPick(
            f"pick matches no child in {len(empty_pick_families)} reachable "
            f"families (e.g. {shown}); guard the pick or use an explicit reject",
            families=[f for f, _ in empty_pick_families],
            span=empty_pick_families[0][1].span,
        )
    if fell_through:
        warnings.warn(
            f"procedure '{ast.name}': some execution paths end without "
            "say/reject; treating them as reject",
            DslWarning,
            stacklevel=2,
        )
    return ProtocolKernel(cfg, rows, pre_filter=pre_filter)


def load_protocol(path, cfg: WorldConfig) -> ProtocolKernel:
    with open(path, encoding="utf-8") as fh:
        return compile_protocol(parse(fh.read()), cfg)


# ---------------------------------------------------------------------------
# Renderer
# ---------------------------------------------------------------------------

def _render_day(day: DayLit) -> str:
    return model.DAY_NAMES[day.value] if day.named else f"d{day.value}"


def _render_sex(sex: Sex) -> str:
    return sex.name.lower()


def _render_pred(p: Pred, parent_prec: int = 0) -> str:
    # precedence: or=1, and=2, atoms/not=3
    match p:
        case PExists(sex=s, day=d):
            args = [x for x in (None if s is None else _render_sex(s),
                                None if d is None else _render_day(d)) if x]
            text, prec = f"exists({', '.join(args)})", 3
        case PAll(sex=s, day=d):
            arg = _render_sex(s) if s is not None else _render_day(d)
            text, prec = f"all({arg})", 3
        case PCount(sex=s, op=op, n=n):
            text, prec = f"count({_render_sex(s)}) {op} {n}", 3
        case PChildTest(var=v, kind=kind, sex=s, day=d):
            value = _render_sex(s) if kind == "sex" else _render_day(d)
            text, prec = f"{kind}({v}) = {value}", 3
        case PAnd(left=a, right=b):
            text, prec = f"{_render_pred(a, 2)} and {_render_pred(b, 3)}", 2
        case POr(left=a, right=b):
            text, prec = f"{_render_pred(a, 1)} or {_render_pred(b, 2)}", 1
        case PNot(inner=i):
            text, prec = f"not {_render_pred(i, 3)}", 3
        case _:
            raise TypeError(f"not a predicate: {p!r}")
    return f"({text})" if prec < parent_prec else text


def _render_stmt_expr(e: StmtExpr) -> str:
    match e:
        case EClaim(sex=s, day=d):
            sex = f"sex({s.var})" if isinstance(s, VarSex) else _render_sex(s)
            if d is None:
                return f"claim({sex})"
            day = f"day({d.var})" if isinstance(d, VarDay) else _render_day(d)
            return f"claim({sex}, {day})"
        case EAtLeastOne(sex=s):
            return f"atleastone({_render_sex(s)})"
        case ETwoOfAKind(sex=s):
            return f"twoofakind({_render_sex(s)})"
        case EProudOf(sex=s):
            return f"proudof({_render_sex(s)})"
        case EYesNo(answer=a):
            return "yes" if a else "no"
        case EText(label=label):
            escaped = label.replace("\\", "\\\\").replace('"', '\\"')
            return f'text("{escaped}")'
    raise TypeError(f"not a statement expression: {e!r}")


def _render_block(stmts, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    for st in stmts:
        match st:
            case Say(expr=e):
                lines.append(f"{pad}say {_render_stmt_expr(e)};")
            case Reject():
                lines.append(f"{pad}reject;")
            case Pick(var=v, where=w):
                clause = "" if w is None else f" where {_render_where(w)}"
                lines.append(f"{pad}pick {v}{clause};")
            case If(pred=p, then=t, els=e):
                lines.append(f"{pad}if {_render_pred(p)} {{")
                _render_block(t, indent + 1, lines)
                if e is None:
                    lines.append(f"{pad}}}")
                else:
                    lines.append(f"{pad}}} else {{")
                    _render_block(e, indent + 1, lines)
                    lines.append(f"{pad}}}")
            case Flip(prob=p, then=t, els=e):
                lines.append(f"{pad}flip {p} {{")
                _render_block(t, indent + 1, lines)
                lines.append(f"{pad}}} else {{")
                _render_block(e, indent + 1, lines)
                lines.append(f"{pad}}}")


def _render_where(w: PChildTest) -> str:
    value = _render_sex(w.sex) if w.kind == "sex" else _render_day(w.day)
    return f"{w.kind}({w.var})={value}"


def render(ast: ProtocolAst) -> str:
    """Canonical source text; parse(render(ast)) == ast."""
    lines = [f"procedure {ast.name} {{"]
    for pred in ast.requires:
        lines.append(f"  require {_render_pred(pred)};")
    _render_block(ast.body, 1, lines)
    lines.append("}")
    return "\n".join(lines) + "\n"


# CLI entry points: the statement and event sub-grammars, standalone.

def parse_statement_text(text: str, cfg: WorldConfig) -> Statement:
    """Parse a bare statement expression, e.g. ``claim(boy,tue)``."""
    parser = _Parser(tokenize(text))
    expr = parser.stmt_expr()
    if parser.cur.kind != "eof":
        parser.fail("end of input")
    if isinstance(expr, EClaim) and (
        isinstance(expr.sex, VarSex) or isinstance(expr.day, VarDay)
    ):
        raise UnboundVariable("child variables are not available here")
    return _resolve_stmt(expr, (), {}, cfg)


def parse_event_text(text: str, cfg: WorldConfig) -> QueryPredicate:
    """Parse a bare family-level predicate, e.g. ``all(boy)``."""
    parser = _Parser(tokenize(text))
    pred = parser.pred()
    if parser.cur.kind != "eof":
        parser.fail("end of input")
    return pred_to_query(pred, cfg)
