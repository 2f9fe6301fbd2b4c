"""A small language for integer (and rational) sequences.

Grammar (whitespace insensitive, decimal integers)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' atom)? ('!')?
    atom   := INT | 'n' | 't' '(' 'n' '-' INT ')' | ident '(' args ')'
            | ident | '(' expr ')'

Builtins: ``nth_prime(k)`` (1-based), ``floor_div(x, y)``, ``ceil(x)``,
``round(x)`` (half away from zero), ``prodprefix(seq)`` / ``prodprefix(seq, m)``
(product of ``seq(i)`` for ``first_index <= i <= m``, ``m`` defaulting to ``n``;
``seq`` may be ``t`` itself when ``m <= n - 1``).  Any other ``ident(k)`` is a
reference to another sequence bound in the definition's environment and a bare
``ident`` is a named constant from it.  ``/`` is exact rational division and
``^`` needs a nonnegative integer exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Union

from .exact_arith import DEFAULT_PRECISION, Precision, RatBall, ball_ln
from .primes import nth_prime
from .verdict import Verdict

MAX_LAG = 8
MAX_RESULT_BITS = 1 << 28

BUILTINS = {"nth_prime": (1,), "floor_div": (2,), "ceil": (1,), "round": (1,), "prodprefix": (1, 2)}


class SeqError(Exception):
    pass


class ParseError(SeqError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.message = message
        self.line = line
        self.col = col


class UnknownIdentifierError(ParseError):
    pass


class ArityError(ParseError):
    pass


class EvaluationError(SeqError):
    pass


class IndexRangeError(EvaluationError):
    pass


class NonIntegralError(EvaluationError):
    pass


class ResourceCapError(EvaluationError):
    pass


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Index:
    pass


@dataclass(frozen=True)
class Prev:
    lag: int


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: "Node"


@dataclass(frozen=True)
class Factorial:
    arg: "Node"


Node = Union[Num, Index, Prev, Name, Call, BinOp, Pow, Factorial]


def walk(node: Node) -> Iterator[Node]:
    yield node
    if isinstance(node, Call):
        for a in node.args:
            yield from walk(a)
    elif isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Pow):
        yield from walk(node.base)
        yield from walk(node.exp)
    elif isinstance(node, Factorial):
        yield from walk(node.arg)


def to_text(node: Node) -> str:
    """Render an AST so that parsing the text gives back an equal AST."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Index):
        return "n"
    if isinstance(node, Prev):
        return f"t(n-{node.lag})"
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Call):
        return f"{node.func}({', '.join(to_text(a) for a in node.args)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Pow):
        return f"{_atom_text(node.base)}^{_atom_text(node.exp)}"
    if isinstance(node, Factorial):
        inner = node.arg
        if isinstance(inner, Pow):
            return f"{to_text(inner)}!"
        return f"{_atom_text(inner)}!"
    raise TypeError(node)


def _atom_text(node: Node) -> str:
    text = to_text(node)
    if isinstance(node, (Pow, Factorial)):
        return f"({text})"
    return text


# ---------------------------------------------------------------------------
# lexer / parser

@dataclass(frozen=True)
class _Tok:
    kind: str  # INT, IDENT, OP, EOF
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, line, col = 0, 1, 1
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("INT", text[i:j], line, start_col))
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("IDENT", text[i:j], line, start_col))
        elif ch in "+-*/^!(),":
            j = i + 1
            toks.append(_Tok("OP", ch, line, start_col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        col += j - i
        i = j
    toks.append(_Tok("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, names):
        self.toks = _tokenize(text)
        self.pos = 0
        self.names = None if names is None else set(names)

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None, cls=ParseError):
        tok = tok or self.peek()
        raise cls(msg, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind not in ("OP", "IDENT"):
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.next()

    def parse(self) -> Node:
        if self.peek().kind == "EOF":
            self.fail("empty expression")
        node = self.expr()
        if self.peek().kind != "EOF":
            self.fail(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.next().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op = self.next().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.next()
            node = Pow(node, self.atom())
        if self.peek().kind == "OP" and self.peek().text == "!":
            self.next()
            node = Factorial(node)
        return node

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return Num(int(tok.text))
        if tok.kind == "OP" and tok.text == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind != "IDENT":
            self.fail(f"expected a value, found {tok.text or 'end of input'!r}")
        self.next()
        following = self.peek()
        is_call = following.kind == "OP" and following.text == "("
        if tok.text == "n":
            if is_call:
                self.fail("'n' is the index variable, not a function", tok)
            return Index()
        if tok.text == "t" and is_call:
            self.next()
            n_tok = self.peek()
            if n_tok.text != "n":
                self.fail("prior-term reference must have the form t(n-k)", n_tok)
            self.next()
            self.expect("-")
            k_tok = self.peek()
            if k_tok.kind != "INT":
                self.fail("expected an integer lag", k_tok)
            self.next()
            self.expect(")")
            lag = int(k_tok.text)
            if not 1 <= lag <= MAX_LAG:
                self.fail(f"lag must be between 1 and {MAX_LAG}", k_tok)
            return Prev(lag)
        if is_call:
            self.next()
            args = [self.expr()]
            while self.peek().kind == "OP" and self.peek().text == ",":
                self.next()
                args.append(self.expr())
            self.expect(")")
            return self._call(tok, tuple(args))
        if tok.text != "t":
            self._check_name(tok)
        return Name(tok.text)

    def _check_name(self, tok: _Tok) -> None:
        if tok.text in BUILTINS:
            self.fail(f"builtin {tok.text!r} needs arguments", tok, ArityError)
        if self.names is not None and tok.text not in self.names:
            self.fail(f"unknown identifier {tok.text!r}", tok, UnknownIdentifierError)

    def _call(self, tok: _Tok, args: tuple) -> Node:
        name = tok.text
        if name in BUILTINS:
            if len(args) not in BUILTINS[name]:
                self.fail(f"{name} takes {' or '.join(map(str, BUILTINS[name]))} argument(s), "
                          f"got {len(args)}", tok, ArityError)
            if name == "prodprefix" and not isinstance(args[0], Name):
                self.fail("prodprefix expects a sequence name first", tok, ArityError)
            if name == "prodprefix" and args[0].ident != "t" and self.names is not None \
                    and args[0].ident not in self.names:
                self.fail(f"unknown identifier {args[0].ident!r}", tok, UnknownIdentifierError)
            return Call(name, args)
        if len(args) != 1:
            self.fail(f"sequence reference {name!r} takes one argument", tok, ArityError)
        self._check_name(tok)
        return Call(name, args)


def parse_expr(text: str, names=None) -> Node:
    """Parse one expression.  With ``names`` given, identifiers outside it
    (and the builtins) are rejected at parse time."""
    return _Parser(text, names).parse()


def _max_lag(node: Node) -> int:
    return max((x.lag for x in walk(node) if isinstance(x, Prev)), default=0)


def _self_referencing(node: Node) -> bool:
    return any(isinstance(x, Prev) or (isinstance(x, Call) and x.func == "prodprefix"
                                       and x.args[0] == Name("t")) for x in walk(node))


# ---------------------------------------------------------------------------
# sequence definitions

@dataclass(frozen=True)
class Window:
    """Inclusive index range [start, stop]."""

    start: int
    stop: int

    def __post_init__(self):
        if self.start > self.stop:
            raise ValueError(f"empty window [{self.start}, {self.stop}]")

    def __iter__(self):
        return iter(range(self.start, self.stop + 1))

    def __len__(self) -> int:
        return self.stop - self.start + 1

    def clip(self, start: int) -> Window | None:
        lo = max(self.start, start)
        return Window(lo, self.stop) if lo <= self.stop else None

    def as_tuple(self) -> tuple[int, int]:
        return self.start, self.stop


KINDS = ("closed_form", "recurrence", "table", "primes")


@dataclass(frozen=True)
class SequenceDef:
    """An immutable sequence definition.  Evaluation is memoized on the
    instance; one instance should have one writer at a time."""

    kind: str
    expr: Node | None = None
    base: tuple = ()
    values: tuple = ()
    fill: int | None = None
    first_index: int = 1
    name: str = "t"
    facts: tuple = ()
    env: Mapping = field(default_factory=dict)
    _memo: dict = field(default_factory=dict, compare=False, repr=False)
    _prefix: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "base", tuple(Fraction(v) for v in self.base))
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        object.__setattr__(self, "facts", tuple(self.facts))
        if self.kind in ("closed_form", "recurrence") and self.expr is None:
            raise ValueError(f"{self.kind} needs an expression")
        if self.kind == "closed_form" and _self_referencing(self.expr):
            raise ValueError("closed form may not reference t")
        if self.kind == "table" and not self.values and self.fill is None:
            raise ValueError("empty table")

    # -- construction helpers
    @classmethod
    def closed_form(cls, text: str, **kw) -> SequenceDef:
        return parse_sequence(text, **kw)

    @classmethod
    def table(cls, values, first_index: int = 1, fill: int | None = None, **kw) -> SequenceDef:
        return cls("table", values=tuple(values), fill=fill, first_index=first_index, **kw)

    @classmethod
    def primes(cls, first_index: int = 1, **kw) -> SequenceDef:
        return cls("primes", expr=Call("nth_prime", (Index(),)), first_index=first_index, **kw)

    def with_env(self, env: Mapping) -> SequenceDef:
        return SequenceDef(self.kind, self.expr, self.base, self.values, self.fill,
                           self.first_index, self.name, self.facts, dict(env))

    @property
    def text(self) -> str | None:
        return None if self.expr is None else to_text(self.expr)

    def is_identically_zero(self) -> bool:
        if self.kind == "closed_form":
            return self.expr == Num(0)
        if self.kind == "table":
            return all(v == 0 for v in self.values) and self.fill in (0, None)
        return False

    def zero_beyond(self) -> int | None:
        """Index after which every term is structurally zero, if any."""
        if self.is_identically_zero():
            return self.first_index - 1
        if self.kind == "table" and self.fill == 0:
            return self.first_index + len(self.values) - 1
        return None

    def constant_beyond(self) -> tuple[int, Fraction] | None:
        if self.kind == "table" and self.fill is not None:
            return self.first_index + len(self.values) - 1, Fraction(self.fill)
        return None

    # -- evaluation
    def value(self, n: int) -> Fraction:
        """Exact (possibly rational) value of the n-th term."""
        if not isinstance(n, int) or isinstance(n, bool):
            raise EvaluationError(f"index must be an integer, got {n!r}")
        if n < self.first_index:
            raise IndexRangeError(f"index {n} below first index {self.first_index} of {self.name}")
        memo = self._memo
        if n in memo:
            return memo[n]
        if self.kind == "table":
            k = n - self.first_index
            if k < len(self.values):
                return self.values[k]
            if self.fill is None:
                raise IndexRangeError(f"table {self.name} has no entry at index {n}")
            return Fraction(self.fill)
        if self.kind == "primes":
            v = Fraction(nth_prime(n - self.first_index + 1))
        elif self.kind == "closed_form":
            v = _eval(self.expr, n, self)
        else:
            v = self._recurrence(n)
        memo[n] = v
        return v

    def _recurrence(self, n: int) -> Fraction:
        k = n - self.first_index
        if k < len(self.base):
            return self.base[k]
        lag = _max_lag(self.expr)
        if len(self.base) < max(lag, 1 if _self_referencing(self.expr) else 0):
            raise EvaluationError(f"recurrence {self.name} needs {lag} base term(s), has {len(self.base)}")
        memo = self._memo
        start = max([i for i in memo if i < n], default=self.first_index + len(self.base) - 1) + 1
        for i in range(max(start, self.first_index + len(self.base)), n):
            memo[i] = _eval(self.expr, i, self)
        return _eval(self.expr, n, self)

    def term(self, n: int) -> int:
        """Integer value of the n-th term; raises on a non-integer value."""
        v = self.value(n)
        if v.denominator != 1:
            raise NonIntegralError(f"{self.name}({n}) = {v} is not an integer")
        return v.numerator

    def prefix_product(self, m: int) -> Fraction:
        """Product of the terms with index first_index..m (1 if empty)."""
        if m < self.first_index:
            return Fraction(1)
        cache = self._prefix
        if m in cache:
            return cache[m]
        start = max([i for i in cache if i < m], default=self.first_index - 1)
        acc = cache.get(start, Fraction(1))
        for i in range(start + 1, m + 1):
            acc = acc * self.value(i)
            cache[i] = acc
        return acc

    def values_on(self, window: Window) -> list[Fraction]:
        return [self.value(i) for i in window]


def _as_int(v: Fraction, what: str) -> int:
    if v.denominator != 1:
        raise NonIntegralError(f"{what} must be an integer, got {v}")
    return v.numerator


def _lookup(seq: SequenceDef, ident: str):
    if ident not in seq.env:
        raise EvaluationError(f"unknown identifier {ident!r}")
    return seq.env[ident]


def _eval(node: Node, n: int, seq: SequenceDef) -> Fraction:
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Index):
        return Fraction(n)
    if isinstance(node, Prev):
        i = n - node.lag
        if i < seq.first_index:
            raise IndexRangeError(f"t(n-{node.lag}) at n={n} precedes the first index")
        return seq.value(i)
    if isinstance(node, Name):
        v = _lookup(seq, node.ident)
        if isinstance(v, SequenceDef):
            raise EvaluationError(f"sequence {node.ident!r} used without an index")
        return Fraction(v)
    if isinstance(node, BinOp):
        a, b = _eval(node.left, n, seq), _eval(node.right, n, seq)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise EvaluationError(f"division by zero at n={n}")
        return a / b
    if isinstance(node, Pow):
        base = _eval(node.base, n, seq)
        e = _eval(node.exp, n, seq)
        if e.denominator != 1 or e < 0:
            raise NonIntegralError(f"exponent must be a nonnegative integer, got {e}")
        e = e.numerator
        size = max(base.numerator.bit_length(), base.denominator.bit_length())
        if size > 1 and e * (size - 1) > MAX_RESULT_BITS:
            raise ResourceCapError(f"power too large at n={n}")
        return base ** e
    if isinstance(node, Factorial):
        k = _as_int(_eval(node.arg, n, seq), "factorial argument")
        if k < 0:
            raise EvaluationError("factorial of a negative number")
        if k > 200_000:
            raise ResourceCapError(f"factorial argument {k} too large")
        return Fraction(math.factorial(k))
    if isinstance(node, Call):
        return _eval_call(node, n, seq)
    raise TypeError(node)


def _round_half_away(x: Fraction) -> int:
    q = math.floor(abs(x) + Fraction(1, 2))
    return q if x >= 0 else -q


def _eval_call(node: Call, n: int, seq: SequenceDef) -> Fraction:
    f = node.func
    if f == "prodprefix":
        ident = node.args[0].ident
        m = n if len(node.args) == 1 else _as_int(_eval(node.args[1], n, seq), "prodprefix bound")
        if ident == "t":
            if m >= n:
                raise EvaluationError("prodprefix(t, m) needs m <= n - 1")
            return seq.prefix_product(m)
        target = _lookup(seq, ident)
        if not isinstance(target, SequenceDef):
            raise EvaluationError(f"{ident!r} is not a sequence")
        return target.prefix_product(m)
    args = [_eval(a, n, seq) for a in node.args]
    if f == "nth_prime":
        k = _as_int(args[0], "nth_prime argument")
        if k < 1:
            raise EvaluationError("nth_prime index must be >= 1")
        return Fraction(nth_prime(k))
    if f == "floor_div":
        if args[1] == 0:
            raise EvaluationError(f"floor_div by zero at n={n}")
        return Fraction(math.floor(args[0] / args[1]))
    if f == "ceil":
        return Fraction(math.ceil(args[0]))
    if f == "round":
        return Fraction(_round_half_away(args[0]))
    target = _lookup(seq, f)
    if not isinstance(target, SequenceDef):
        raise EvaluationError(f"{f!r} is not a sequence")
    return target.value(_as_int(args[0], f"index of {f}"))


def parse_sequence(text: str, *, name: str = "t", base=(), first_index: int = 1,
                   facts=(), env: Mapping | None = None, names=None) -> SequenceDef:
    """Parse sequence text; the kind is inferred from the expression.

    ``nth_prime(n)`` alone is the primes kind, any ``t(n-k)`` or
    ``prodprefix(t, ...)`` makes a recurrence, everything else is a closed form.
    """
    if names is None and env is not None:
        names = set(env)
    node = parse_expr(text, names)
    if node == Call("nth_prime", (Index(),)):
        kind = "primes"
    elif _self_referencing(node):
        kind = "recurrence"
        if base and len(base) < _max_lag(node):
            raise ArityError(f"recurrence references t(n-{_max_lag(node)}) but has "
                             f"{len(base)} base term(s)", 1, 1)
    else:
        kind = "closed_form"
    return SequenceDef(kind, expr=node, base=tuple(base), first_index=first_index,
                       name=name, facts=tuple(facts), env=dict(env or {}))


def eval_term(seq: SequenceDef, n: int) -> int:
    return seq.term(n)


# ---------------------------------------------------------------------------
# declared facts

def _val_fn(source) -> Callable[[int], Fraction]:
    if isinstance(source, SequenceDef):
        return source.value
    if callable(source):
        return source
    raise TypeError("fact source must be a SequenceDef or a callable")


@dataclass(frozen=True)
class DeclaredFact:
    """A "for all large n" property, audited on windows and otherwise assumed.

    ``on`` names what the fact is about inside a series: ``"a"``, ``"b"``,
    ``"d"`` or the series ``"terms"``.
    """

    start: int = 1
    on: str = "terms"

    kind = "fact"
    pairwise = False  # compares v(n) with v(n+1)

    def decide(self, value, n: int, prec: Precision) -> bool | None:
        raise NotImplementedError

    def describe(self) -> str:
        return f"{self.kind}({self._params()}) on {self.on} for n >= {self.start}"

    def _params(self) -> str:
        return ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "on": self.on, "from": self.start}


@dataclass(frozen=True)
class EventuallyGe(DeclaredFact):
    bound: Fraction | str = Fraction(0)
    kind = "eventually_ge"

    def _bound_at(self, n: int) -> Fraction:
        if isinstance(self.bound, str):
            return SequenceDef("closed_form", expr=parse_expr(self.bound)).value(n)
        return Fraction(self.bound)

    def decide(self, value, n, prec):
        return value(n) >= self._bound_at(n)

    def _params(self):
        return str(self.bound)

    def to_json(self):
        return {**super().to_json(), "bound": str(self.bound)}


@dataclass(frozen=True)
class EventuallyPositive(DeclaredFact):
    kind = "eventually_positive"

    def decide(self, value, n, prec):
        return value(n) > 0


@dataclass(frozen=True)
class MonotoneNondecreasing(DeclaredFact):
    kind = "monotone_nondecreasing"
    pairwise = True

    def decide(self, value, n, prec):
        return value(n + 1) >= value(n)


@dataclass(frozen=True)
class RatioDominated(DeclaredFact):
    """|v(n+1)| <= c |v(n)|."""

    c: Fraction = Fraction(1, 2)
    kind = "ratio_dominated"
    pairwise = True

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if not 0 <= self.c < 1:
            raise ValueError("ratio_dominated needs 0 <= c < 1")

    def decide(self, value, n, prec):
        return abs(value(n + 1)) <= self.c * abs(value(n))

    def _params(self):
        return str(self.c)

    def to_json(self):
        return {**super().to_json(), "c": str(self.c)}


@dataclass(frozen=True)
class LogTailDominated(DeclaredFact):
    """0 <= ln v(n) <= C * r**n."""

    C: Fraction = Fraction(1)
    r: Fraction = Fraction(1, 2)
    kind = "log_tail_dominated"

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))
        object.__setattr__(self, "r", Fraction(self.r))
        if self.C < 0 or not 0 <= self.r < 1:
            raise ValueError("log_tail_dominated needs C >= 0 and 0 <= r < 1")

    def decide(self, value, n, prec):
        v = value(n)
        if v < 1:
            return False
        if v == 1:
            return True
        cap = self.C * self.r ** n
        for _ in range(3):
            ln = ball_ln(RatBall.point(v), prec)
            if ln.hi <= cap:
                return True
            if ln.lo > cap:
                return False
            prec = prec.doubled()
        return None

    def _params(self):
        return f"{self.C}, {self.r}"

    def to_json(self):
        return {**super().to_json(), "C": str(self.C), "r": str(self.r)}


@dataclass(frozen=True)
class AsymptoticClaim(DeclaredFact):
    """A limit statement that no finite window can check."""

    statement: str = ""
    kind = "asymptotic_claim"

    def decide(self, value, n, prec):
        return None

    def describe(self):
        return f"ASSUMED: {self.statement}"

    def to_json(self):
        return {**super().to_json(), "statement": self.statement}


FACT_KINDS = {cls.kind: cls for cls in (EventuallyGe, EventuallyPositive, MonotoneNondecreasing,
                                        RatioDominated, LogTailDominated, AsymptoticClaim)}


def fact_from_json(obj: dict) -> DeclaredFact:
    kind = obj.get("kind")
    if kind not in FACT_KINDS:
        raise ValueError(f"unknown fact kind {kind!r}")
    kw = {"start": int(obj.get("from", 1)), "on": obj.get("on", "terms")}
    if kind == "eventually_ge":
        b = str(obj.get("bound", "0"))
        try:
            kw["bound"] = Fraction(b)
        except ValueError:
            kw["bound"] = b
    elif kind == "ratio_dominated":
        kw["c"] = Fraction(str(obj["c"]))
    elif kind == "log_tail_dominated":
        kw["C"], kw["r"] = Fraction(str(obj["C"])), Fraction(str(obj["r"]))
    elif kind == "asymptotic_claim":
        kw["statement"] = obj.get("statement", "")
    return FACT_KINDS[kind](**kw)


def check_fact_on_window(source, fact: DeclaredFact, window: Window,
                         prec: Precision | None = None) -> Verdict:
    """Exact check of ``fact`` at every index of ``window`` from ``fact.start``.

    Pairwise facts (monotonicity, ratio domination) are checked on every
    consecutive pair with both indices in the window.

    CertifiedTrue lists the fact as assumed beyond the window; the first
    failing index gives RefutedAt.
    """
    if isinstance(fact, AsymptoticClaim):
        return Verdict.inconclusive("asymptotic claim cannot be checked on a window", (fact,))
    value = _val_fn(source)
    prec = prec or DEFAULT_PRECISION
    w = window.clip(fact.start)
    if w is None:
        return Verdict.inconclusive(f"window [{window.start}, {window.stop}] ends before "
                                    f"the fact starts at {fact.start}", (fact,))
    undecided = []
    # a pairwise fact is checked on the pairs (n, n+1) inside the window
    indices = range(w.start, w.stop) if fact.pairwise else w
    for n in indices:
        ok = fact.decide(value, n, prec)
        if ok is False:
            return Verdict.refuted(n, f"{fact.describe()} fails at n={n}")
        if ok is None:
            undecided.append(n)
    if undecided:
        return Verdict.inconclusive(f"undecided at n={undecided[:5]}", (fact,))
    return Verdict.certified(f"holds on [{w.start}, {w.stop}]", (fact,))


def sequence_from_json(obj: dict, *, name: str = "t", first_index: int = 1,
                       env: Mapping | None = None, names=None) -> SequenceDef:
    """Build a definition from a spec-file sequence object."""
    kind = obj.get("kind")
    first = int(obj.get("first_index", first_index))
    if kind == "table":
        fill = obj.get("fill")
        return SequenceDef.table([Fraction(str(v)) for v in obj["values"]], first_index=first,
                                 fill=None if fill is None else int(fill), name=name)
    if kind == "primes":
        return SequenceDef.primes(first_index=first, name=name)
    if kind == "closed_form":
        seq = parse_sequence(obj["expr"], name=name, first_index=first, env=env, names=names)
        if seq.kind == "recurrence":
            raise ValueError(f"closed_form {name!r} references prior terms")
        return seq
    if kind == "recurrence":
        base = [Fraction(str(v)) for v in obj.get("base", [])]
        seq = parse_sequence(obj["expr"], name=name, first_index=first, base=base,
                             env=env, names=names)
        if seq.kind != "recurrence":
            return SequenceDef("recurrence", expr=seq.expr, base=tuple(base), first_index=first,
                               name=name, env=dict(env or {}))
        return seq
    raise ValueError(f"unknown sequence kind {kind!r}")
