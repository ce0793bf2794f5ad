"""Expression tree for q-series expressions, plus the canonical printer.

Spans are carried for error reporting but excluded from equality, so two
trees parsed from differently spaced text compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Span = tuple[int, int]
_NOSPAN = field(default=(0, 0), compare=False, repr=False)


class Expr:
    span: Span


@dataclass(frozen=True)
class Const(Expr):
    value: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Mono(Expr):
    c: int
    j: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class PochInf(Expr):
    sign: int
    a: int
    k: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class PochFin(Expr):
    sign: int
    a: int
    k: int
    n: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class BigP(Expr):
    sign: int
    a: int
    k: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class PZero(Expr):
    ell: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Theta(Expr):
    sign: int
    a: int
    k: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class SigmaAB(Expr):
    a: int
    b: int
    ell: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Sigma0B(Expr):
    b: int
    ell: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class S2(Expr):
    b: int
    ell: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class G(Expr):
    a: int
    ell: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class RankGF(Expr):
    s: int
    ell: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Multiplier(Expr):
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Dissect(Expr):
    child: Expr
    ell: int
    d: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class SubPow(Expr):
    child: Expr
    k: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Pow(Expr):
    child: Expr
    n: int
    span: Span = _NOSPAN


@dataclass(frozen=True)
class Neg(Expr):
    child: Expr
    span: Span = _NOSPAN


# -- printing ----------------------------------------------------------------


def _mono_arg(sign: int, a: int) -> str:
    if a == 0:
        body = "1"
    elif a == 1:
        body = "q"
    else:
        body = f"q^{a}"
    return ("-" if sign < 0 else "") + body


def _base(k: int) -> str:
    return "q" if k == 1 else f"q^{k}"


def _call(node: Expr) -> str | None:
    if isinstance(node, PochInf):
        return f"poch({_mono_arg(node.sign, node.a)}; {_base(node.k)}; inf)"
    if isinstance(node, PochFin):
        return f"poch({_mono_arg(node.sign, node.a)}; {_base(node.k)}; {node.n})"
    if isinstance(node, BigP):
        return f"P({_mono_arg(node.sign, node.a)}; {_base(node.k)})"
    if isinstance(node, Theta):
        return f"theta({_mono_arg(node.sign, node.a)}; {_base(node.k)})"
    if isinstance(node, PZero):
        return f"P0({node.ell})"
    if isinstance(node, SigmaAB):
        return f"sigma({node.a}, {node.b}, {node.ell})"
    if isinstance(node, Sigma0B):
        return f"sigma0({node.b}, {node.ell})"
    if isinstance(node, S2):
        return f"S2({node.b}, {node.ell})"
    if isinstance(node, G):
        return f"g({node.a}, {node.ell})"
    if isinstance(node, RankGF):
        return f"rankgf({node.s}, {node.ell})"
    if isinstance(node, Multiplier):
        return "mult()"
    if isinstance(node, Dissect):
        return f"dissect({to_text(node.child)}, {node.ell}, {node.d})"
    if isinstance(node, SubPow):
        return f"subpow({to_text(node.child)}, {node.k})"
    return None


def _atom(node: Expr) -> str:
    if isinstance(node, Const):
        return str(node.value) if node.value >= 0 else f"({node.value})"
    if isinstance(node, Mono):
        q = "q" if node.j == 1 else f"q^{node.j}"
        return q if node.c == 1 else f"({node.c} * {q})"
    text = _call(node)
    if text is not None:
        return text
    return f"({to_text(node)})"


def _factor(node: Expr) -> str:
    if isinstance(node, Pow):
        base = f"({_atom(node.child)})" if isinstance(node.child, Mono) else _atom(node.child)
        return f"{base}^{node.n}"
    if isinstance(node, Neg):
        return f"-{_factor(node.child)}"
    return _atom(node)


def _term(node: Expr) -> str:
    if isinstance(node, (Mul, Div)):
        op = "*" if isinstance(node, Mul) else "/"
        return f"{_term(node.left)} {op} {_factor(node.right)}"
    return _factor(node)


def to_text(node: Expr) -> str:
    """Render an expression as parseable text.

    For any tree the parser can produce, parsing the text gives back an equal
    tree.  Scaled monomials and negative constants print as products and
    negations with the same value.
    """
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        return f"{to_text(node.left)} {op} {_term(node.right)}"
    return _term(node)
