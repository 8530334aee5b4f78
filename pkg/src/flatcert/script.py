"""The .fc script language: parser, pretty-printer, and interpreter.

Statements (each terminated by ';', '#' starts a comment):

    ring R = QQ[x,y,z] / (x*y - z^2);    # quotient part optional
    ring V = image F;                    # subalgebra presented by a map
    ring T = Q ** V;                     # tensor product of two rings
    ideal J = (x - u, z - u*v) in R;
    module K = R^1 / ((x), (y), (z));    # rows are relation vectors
    map F : R -> S = {e^2, g^2, h^2};    # images of R's variables in S
    assert tor(1, J, K) == 0;            # or != 0; free(R, n) is allowed
    assert flat(J at (x, y));
    print J;                             # also print tor(...) / flat(...)

Reserved words cannot be used as variable names.  Execution reports carry
one record per assertion; the exit status is 0 when every assertion
passes, 1 on an assertion failure, 2 on a parse error, and 3 on a
computation error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Union

from .flatness import PointSpec, flat_at_point, tensor_rings
from .groebner import IdealHandle, RingMap, map_kernel
from .homology import PresentedModule, tor
from .modules import PolyMatrix, SubmodulePresentation
from .parse import (
    Expr,
    ParseError,
    Token,
    TokenStream,
    expr_text,
    parse_expression,
    to_polynomial,
    tokenize,
)
from .poly import (
    AlgebraError,
    ArgumentError,
    DimensionError,
    GREVLEX,
    PresentedRing,
    RingSignature,
)

RESERVED = {
    "ring", "ideal", "module", "map", "assert", "print",
    "in", "at", "image", "free", "tor", "flat", "QQ",
}


@dataclass(frozen=True)
class FreeModuleArg:
    ring_name: str
    rank: int


TorArg = Union[str, FreeModuleArg]


@dataclass(frozen=True)
class TorCall:
    index: int
    left: TorArg
    right: TorArg


@dataclass(frozen=True)
class FlatCall:
    name: str
    point: tuple[Expr, ...]


@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple[str, ...]
    quotient: tuple[Expr, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ImageRingDecl:
    name: str
    map_name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class TensorRingDecl:
    name: str
    left: str
    right: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: tuple[Expr, ...]
    ring_name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    ring_name: str
    rank: int
    rows: tuple[tuple[Expr, ...], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    source_name: str
    target_name: str
    images: tuple[Expr, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class AssertTor:
    call: TorCall
    nonzero: bool
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class AssertFlat:
    call: FlatCall
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PrintStmt:
    subject: Union[str, TorCall, FlatCall]
    line: int = field(default=0, compare=False)


Statement = Union[
    RingDecl, ImageRingDecl, TensorRingDecl, IdealDecl,
    ModuleDecl, MapDecl, AssertTor, AssertFlat, PrintStmt,
]


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]


def _expect_name(ts: TokenStream, what: str) -> Token:
    tok = ts.peek()
    if tok.kind != "name":
        found = tok.text or "end of input"
        raise ParseError(f"expected {what}, found {found!r}", tok.line, tok.col)
    return ts.next()


def _expect_keyword(ts: TokenStream, word: str) -> Token:
    tok = ts.peek()
    if tok.kind != "name" or tok.text != word:
        found = tok.text or "end of input"
        raise ParseError(f"expected {word!r}, found {found!r}", tok.line, tok.col)
    return ts.next()


def _expr_list(ts: TokenStream, closer: str) -> tuple[Expr, ...]:
    if ts.peek().kind == closer:
        return ()
    exprs = [parse_expression(ts)]
    while ts.peek().kind == ",":
        ts.next()
        exprs.append(parse_expression(ts))
    return tuple(exprs)


def _tor_arg(ts: TokenStream) -> TorArg:
    tok = _expect_name(ts, "an ideal, module, or free(RING, n)")
    if tok.text == "free" and ts.peek().kind == "(":
        ts.next()
        ring_name = _expect_name(ts, "a ring name").text
        ts.expect(",")
        rank = int(ts.expect("int", "a rank").text)
        ts.expect(")")
        return FreeModuleArg(ring_name, rank)
    return tok.text


def _tor_call(ts: TokenStream) -> TorCall:
    _expect_keyword(ts, "tor")
    ts.expect("(")
    index = int(ts.expect("int", "a Tor index").text)
    ts.expect(",")
    left = _tor_arg(ts)
    ts.expect(",")
    right = _tor_arg(ts)
    ts.expect(")")
    return TorCall(index, left, right)


def _flat_call(ts: TokenStream) -> FlatCall:
    _expect_keyword(ts, "flat")
    ts.expect("(")
    name = _expect_name(ts, "an ideal or module name").text
    _expect_keyword(ts, "at")
    ts.expect("(")
    point = _expr_list(ts, ")")
    ts.expect(")")
    ts.expect(")")
    return FlatCall(name, point)


def _ring_decl(ts: TokenStream, line: int) -> Statement:
    name = _expect_name(ts, "a ring name").text
    ts.expect("=")
    tok = ts.peek()
    if tok.kind == "name" and tok.text == "QQ":
        ts.next()
        ts.expect("[")
        variables: list[str] = []
        if ts.peek().kind != "]":
            while True:
                vtok = _expect_name(ts, "a variable name")
                if vtok.text in RESERVED:
                    raise ParseError(
                        f"{vtok.text!r} is a reserved word", vtok.line, vtok.col
                    )
                if vtok.text in variables:
                    raise ParseError(
                        f"duplicate variable {vtok.text!r}", vtok.line, vtok.col
                    )
                variables.append(vtok.text)
                if ts.peek().kind != ",":
                    break
                ts.next()
        ts.expect("]")
        quotient: tuple[Expr, ...] = ()
        if ts.peek().kind == "/":
            ts.next()
            ts.expect("(")
            quotient = _expr_list(ts, ")")
            ts.expect(")")
        ts.expect(";")
        return RingDecl(name, tuple(variables), quotient, line)
    if tok.kind == "name" and tok.text == "image":
        ts.next()
        map_name = _expect_name(ts, "a map name").text
        ts.expect(";")
        return ImageRingDecl(name, map_name, line)
    left = _expect_name(ts, "QQ[...], image MAP, or RING ** RING").text
    ts.expect("*")
    ts.expect("*")
    right = _expect_name(ts, "a ring name").text
    ts.expect(";")
    return TensorRingDecl(name, left, right, line)


def _statement(ts: TokenStream) -> Statement:
    tok = ts.peek()
    if tok.kind != "name":
        found = tok.text or "end of input"
        raise ParseError(f"expected a statement, found {found!r}", tok.line, tok.col)
    line = tok.line
    word = tok.text
    if word == "ring":
        ts.next()
        return _ring_decl(ts, line)
    if word == "ideal":
        ts.next()
        name = _expect_name(ts, "an ideal name").text
        ts.expect("=")
        ts.expect("(")
        gens = _expr_list(ts, ")")
        ts.expect(")")
        _expect_keyword(ts, "in")
        ring_name = _expect_name(ts, "a ring name").text
        ts.expect(";")
        return IdealDecl(name, gens, ring_name, line)
    if word == "module":
        ts.next()
        name = _expect_name(ts, "a module name").text
        ts.expect("=")
        ring_name = _expect_name(ts, "a ring name").text
        ts.expect("^")
        rank = int(ts.expect("int", "a rank").text)
        ts.expect("/")
        ts.expect("(")
        rows: list[tuple[Expr, ...]] = []
        if ts.peek().kind != ")":
            while True:
                ts.expect("(")
                rows.append(_expr_list(ts, ")"))
                ts.expect(")")
                if ts.peek().kind != ",":
                    break
                ts.next()
        ts.expect(")")
        ts.expect(";")
        return ModuleDecl(name, ring_name, rank, tuple(rows), line)
    if word == "map":
        ts.next()
        name = _expect_name(ts, "a map name").text
        ts.expect(":")
        source = _expect_name(ts, "a ring name").text
        ts.expect("->")
        target = _expect_name(ts, "a ring name").text
        ts.expect("=")
        ts.expect("{")
        images = _expr_list(ts, "}")
        ts.expect("}")
        ts.expect(";")
        return MapDecl(name, source, target, images, line)
    if word == "assert":
        ts.next()
        head = ts.peek()
        if head.kind == "name" and head.text == "tor":
            call = _tor_call(ts)
            op = ts.peek()
            if op.kind not in ("==", "!="):
                raise ParseError(
                    f"expected '==' or '!=', found {op.text!r}", op.line, op.col
                )
            ts.next()
            zero = ts.expect("int", "0")
            if zero.text != "0":
                raise ParseError("expected 0", zero.line, zero.col)
            ts.expect(";")
            return AssertTor(call, op.kind == "!=", line)
        if head.kind == "name" and head.text == "flat":
            call = _flat_call(ts)
            ts.expect(";")
            return AssertFlat(call, line)
        found = head.text or "end of input"
        raise ParseError(
            f"expected tor(...) or flat(...), found {found!r}", head.line, head.col
        )
    if word == "print":
        ts.next()
        head = ts.peek()
        if head.kind == "name" and head.text == "tor":
            subject: Union[str, TorCall, FlatCall] = _tor_call(ts)
        elif head.kind == "name" and head.text == "flat":
            subject = _flat_call(ts)
        else:
            subject = _expect_name(ts, "a declared name").text
        ts.expect(";")
        return PrintStmt(subject, line)
    raise ParseError(f"unknown statement {word!r}", tok.line, tok.col)


def parse_script(text: str) -> Script:
    ts = TokenStream(tokenize(text))
    statements = []
    while ts.peek().kind != "eof":
        statements.append(_statement(ts))
    return Script(tuple(statements))


def _tor_arg_text(arg: TorArg) -> str:
    if isinstance(arg, FreeModuleArg):
        return f"free({arg.ring_name}, {arg.rank})"
    return arg


def _subject_text(subject: Union[str, TorCall, FlatCall]) -> str:
    if isinstance(subject, TorCall):
        return (
            f"tor({subject.index}, {_tor_arg_text(subject.left)}, "
            f"{_tor_arg_text(subject.right)})"
        )
    if isinstance(subject, FlatCall):
        point = ", ".join(expr_text(e) for e in subject.point)
        return f"flat({subject.name} at ({point}))"
    return subject


def pretty_script(script: Script) -> str:
    """Canonical text; reparses to an equal Script (positions aside)."""
    lines = []
    for stmt in script.statements:
        if isinstance(stmt, RingDecl):
            base = f"ring {stmt.name} = QQ[{','.join(stmt.variables)}]"
            if stmt.quotient:
                rels = ", ".join(expr_text(e) for e in stmt.quotient)
                base += f" / ({rels})"
            lines.append(base + ";")
        elif isinstance(stmt, ImageRingDecl):
            lines.append(f"ring {stmt.name} = image {stmt.map_name};")
        elif isinstance(stmt, TensorRingDecl):
            lines.append(f"ring {stmt.name} = {stmt.left} ** {stmt.right};")
        elif isinstance(stmt, IdealDecl):
            gens = ", ".join(expr_text(e) for e in stmt.gens)
            lines.append(f"ideal {stmt.name} = ({gens}) in {stmt.ring_name};")
        elif isinstance(stmt, ModuleDecl):
            rows = ", ".join(
                "(" + ", ".join(expr_text(e) for e in row) + ")"
                for row in stmt.rows
            )
            lines.append(
                f"module {stmt.name} = {stmt.ring_name}^{stmt.rank} / ({rows});"
            )
        elif isinstance(stmt, MapDecl):
            images = ", ".join(expr_text(e) for e in stmt.images)
            lines.append(
                f"map {stmt.name} : {stmt.source_name} -> {stmt.target_name}"
                f" = {{{images}}};"
            )
        elif isinstance(stmt, AssertTor):
            op = "!=" if stmt.nonzero else "=="
            lines.append(f"assert {_subject_text(stmt.call)} {op} 0;")
        elif isinstance(stmt, AssertFlat):
            lines.append(f"assert {_subject_text(stmt.call)};")
        elif isinstance(stmt, PrintStmt):
            lines.append(f"print {_subject_text(stmt.subject)};")
        else:  # pragma: no cover - exhaustive
            raise AlgebraError("unknown statement")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class AssertionRecord:
    label: str
    description: str
    expected: str  # "zero" or "nonzero"
    actual: str
    passed: bool
    seconds: float


@dataclass
class ScriptReport:
    assertions: list[AssertionRecord]
    prints: list[str]
    error: str | None
    status: int  # 0 pass, 1 assertion failure, 2 parse error, 3 computation error

    @property
    def ok(self) -> bool:
        return self.status == 0


def _lookup(env: dict, name: str, line: int):
    if name not in env:
        raise ArgumentError(f"line {line}: undeclared name {name!r}")
    return env[name]


def _ring_of(env: dict, name: str, line: int) -> PresentedRing:
    obj = _lookup(env, name, line)
    if not isinstance(obj, PresentedRing):
        raise ArgumentError(f"line {line}: {name!r} is not a ring")
    return obj


def _module_arg(env: dict, arg: TorArg, line: int):
    if isinstance(arg, FreeModuleArg):
        return PresentedModule.free(
            _ring_of(env, arg.ring_name, line), arg.rank
        )
    obj = _lookup(env, arg, line)
    if not isinstance(obj, (IdealHandle, PresentedModule, SubmodulePresentation)):
        raise ArgumentError(f"line {line}: {arg!r} is not an ideal or module")
    return obj


class Interpreter:
    def __init__(self, default_order: str = GREVLEX):
        self.default_order = default_order
        self.env: dict[str, object] = {}

    def execute(self, script: Script) -> ScriptReport:
        report = ScriptReport([], [], None, 0)
        for stmt in script.statements:
            try:
                self._exec(stmt, report)
            except ParseError as e:
                report.error = str(e)
                report.status = 2
                return report
            except AlgebraError as e:
                msg = str(e)
                report.error = msg if msg.startswith("line ") else f"line {stmt.line}: {msg}"
                report.status = 3
                return report
        if any(not a.passed for a in report.assertions):
            report.status = 1
        return report

    def _exec(self, stmt: Statement, report: ScriptReport) -> None:
        env = self.env
        if isinstance(stmt, RingDecl):
            sig = RingSignature(stmt.variables, self.default_order)
            rels = [to_polynomial(e, sig) for e in stmt.quotient]
            env[stmt.name] = PresentedRing(sig, rels)
        elif isinstance(stmt, ImageRingDecl):
            F = _lookup(env, stmt.map_name, stmt.line)
            if not isinstance(F, RingMap):
                raise ArgumentError(f"line {stmt.line}: {stmt.map_name!r} is not a map")
            kernel = map_kernel(F)
            env[stmt.name] = PresentedRing(F.source.signature, kernel.generators)
        elif isinstance(stmt, TensorRingDecl):
            left = _ring_of(env, stmt.left, stmt.line)
            right = _ring_of(env, stmt.right, stmt.line)
            env[stmt.name] = tensor_rings(left, right)
        elif isinstance(stmt, IdealDecl):
            ring = _ring_of(env, stmt.ring_name, stmt.line)
            gens = [to_polynomial(e, ring.signature) for e in stmt.gens]
            env[stmt.name] = IdealHandle(ring, gens)
        elif isinstance(stmt, ModuleDecl):
            ring = _ring_of(env, stmt.ring_name, stmt.line)
            cols = []
            for row in stmt.rows:
                entries = tuple(to_polynomial(e, ring.signature) for e in row)
                if len(entries) != stmt.rank:
                    raise DimensionError(
                        f"line {stmt.line}: relation has {len(entries)} entries, "
                        f"expected {stmt.rank}"
                    )
                cols.append(entries)
            env[stmt.name] = PresentedModule(
                ring, stmt.rank, PolyMatrix(ring, stmt.rank, cols)
            )
        elif isinstance(stmt, MapDecl):
            source = _ring_of(env, stmt.source_name, stmt.line)
            target = _ring_of(env, stmt.target_name, stmt.line)
            images = [to_polynomial(e, target.signature) for e in stmt.images]
            env[stmt.name] = RingMap(source, target, images)
        elif isinstance(stmt, AssertTor):
            expected = "nonzero" if stmt.nonzero else "zero"
            actual, seconds = self._run_tor(stmt.call, stmt.line)
            report.assertions.append(
                AssertionRecord(
                    f"assert@{stmt.line}",
                    f"{_subject_text(stmt.call)} {'!=' if stmt.nonzero else '=='} 0",
                    expected,
                    actual,
                    actual == expected,
                    seconds,
                )
            )
        elif isinstance(stmt, AssertFlat):
            actual, seconds = self._run_flat(stmt.call, stmt.line)
            report.assertions.append(
                AssertionRecord(
                    f"assert@{stmt.line}",
                    _subject_text(stmt.call),
                    "zero",
                    actual,
                    actual == "zero",
                    seconds,
                )
            )
        elif isinstance(stmt, PrintStmt):
            report.prints.append(self._print_text(stmt))
        else:  # pragma: no cover - exhaustive
            raise AlgebraError("unknown statement")

    def _run_tor(self, call: TorCall, line: int) -> tuple[str, float]:
        left = _module_arg(self.env, call.left, line)
        right = _module_arg(self.env, call.right, line)
        start = time.perf_counter()
        result = tor(call.index, left, right)
        seconds = time.perf_counter() - start
        return ("zero" if result.is_zero else "nonzero"), seconds

    def _run_flat(self, call: FlatCall, line: int) -> tuple[str, float]:
        obj = _module_arg(self.env, call.name, line)
        ring = obj.ring
        gens = [to_polynomial(e, ring.signature) for e in call.point]
        spec = PointSpec(ring, IdealHandle(ring, gens))
        start = time.perf_counter()
        verdict = flat_at_point(obj, spec)
        seconds = time.perf_counter() - start
        return ("zero" if verdict.flat else "nonzero"), seconds

    def _print_text(self, stmt: PrintStmt) -> str:
        subject = stmt.subject
        if isinstance(subject, TorCall):
            left = _module_arg(self.env, subject.left, stmt.line)
            right = _module_arg(self.env, subject.right, stmt.line)
            return f"{_subject_text(subject)}: {tor(subject.index, left, right)}"
        if isinstance(subject, FlatCall):
            obj = _module_arg(self.env, subject.name, stmt.line)
            ring = obj.ring
            gens = [to_polynomial(e, ring.signature) for e in subject.point]
            spec = PointSpec(ring, IdealHandle(ring, gens))
            return f"{_subject_text(subject)}: {flat_at_point(obj, spec)}"
        return f"{subject} = {_lookup(self.env, subject, stmt.line)}"


def execute_text(
    text: str, order: str = GREVLEX
) -> tuple[ScriptReport, dict[str, object]]:
    """Parse and run script text, returning the report and environment."""
    try:
        script = parse_script(text)
    except ParseError as e:
        return ScriptReport([], [], str(e), 2), {}
    interp = Interpreter(order)
    report = interp.execute(script)
    return report, interp.env


def run_script(path: str, order: str = GREVLEX) -> ScriptReport:
    """Run the script at `path`; the report's status is the exit status."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    report, _ = execute_text(text, order)
    return report
