"""Evaluate expression trees to exact truncated series.

``evaluate(e, order)`` returns a series exact through q^order in the
expression's own variable.  Precision is pulled from the root downward: a
node asked for precision P requests P from its children and, if Laurent
factors cost precision on the way up, asks again with the shortfall added.
``Dissect`` asks its child for l times as much.
"""

from __future__ import annotations

from .. import genfuncs, lambert, products
from ..series import InsufficientPrecision, QSeries, SeriesError, divide, dissect, mul, power, substitute_power
from . import ast
from .parser import parse

_MAX_RETRIES = 8


class EvalError(ArithmeticError):
    def __init__(self, message: str, span: ast.Span, cause: BaseException | None = None):
        super().__init__(f"{message} (in span {span[0]}:{span[1]})")
        self.message = message
        self.span = span
        self.cause = cause


class Evaluator:
    def __init__(self) -> None:
        self.memo: dict[tuple[ast.Expr, int], QSeries] = {}

    def eval(self, node: ast.Expr, prec: int) -> QSeries:
        key = (node, prec)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        try:
            out = self._eval(node, prec)
        except EvalError:
            raise
        except (SeriesError, lambert.ZeroDenominator, ValueError, ArithmeticError) as exc:
            raise EvalError(f"{type(exc).__name__}: {exc}", node.span, exc) from exc
        if out.prec < prec:
            raise EvalError(
                f"InsufficientPrecision: reached q^{out.prec - 1}, needed q^{prec - 1}",
                node.span,
                InsufficientPrecision(),
            )
        out = out.truncate(prec)
        self.memo[key] = out
        return out

    def _retry(self, prec: int, build) -> QSeries:
        work = prec
        for _ in range(_MAX_RETRIES):
            out = build(work)
            if out.prec >= prec:
                return out
            work += prec - out.prec
        return out

    def _eval(self, node: ast.Expr, prec: int) -> QSeries:
        if isinstance(node, ast.Const):
            return QSeries.monomial(node.value, 0, prec)
        if isinstance(node, ast.Mono):
            return QSeries.monomial(node.c, node.j, prec)
        if isinstance(node, ast.PochInf):
            return products.poch_inf(node.sign, node.a, node.k, prec)
        if isinstance(node, ast.PochFin):
            return products.poch_fin(node.sign, node.a, node.k, node.n, prec)
        if isinstance(node, ast.BigP):
            return products.big_p(node.sign, node.a, node.k, prec)
        if isinstance(node, ast.PZero):
            return products.p_zero(node.ell, prec)
        if isinstance(node, ast.Theta):
            return products.theta_sum(node.sign, node.a, node.k, prec)
        if isinstance(node, ast.SigmaAB):
            return lambert.sigma_ab(node.a, node.b, node.ell, prec)
        if isinstance(node, ast.Sigma0B):
            return lambert.sigma_0b(node.b, node.ell, prec)
        if isinstance(node, ast.S2):
            return lambert.s2(node.b, node.ell, prec)
        if isinstance(node, ast.G):
            return lambert.g_of(node.a, node.ell, prec)
        if isinstance(node, ast.RankGF):
            return genfuncs.rank_gf(node.s, node.ell, prec)
        if isinstance(node, ast.Multiplier):
            return genfuncs.multiplier(prec)
        if isinstance(node, ast.Dissect):
            child = self.eval(node.child, node.ell * (prec - 1) + node.d + 1)
            return dissect(child, node.ell, node.d)
        if isinstance(node, ast.SubPow):
            child = self.eval(node.child, -(-prec // node.k))
            return substitute_power(child, node.k)
        if isinstance(node, ast.Neg):
            return -self.eval(node.child, prec)
        if isinstance(node, ast.Add):
            return self.eval(node.left, prec) + self.eval(node.right, prec)
        if isinstance(node, ast.Sub):
            return self.eval(node.left, prec) - self.eval(node.right, prec)
        if isinstance(node, ast.Mul):
            return self._retry(prec, lambda w: mul(self.eval(node.left, w), self.eval(node.right, w)))
        if isinstance(node, ast.Div):
            return self._retry(prec, lambda w: divide(self.eval(node.left, w), self.eval(node.right, w)))
        if isinstance(node, ast.Pow):
            if node.n < 0:
                raise ValueError("negative powers are not supported")
            return self._retry(prec, lambda w: power(self.eval(node.child, w), node.n))
        raise TypeError(f"cannot evaluate {type(node).__name__}")


def evaluate(expr: ast.Expr | str, order: int, evaluator: Evaluator | None = None) -> QSeries:
    """Series exact through q^order (precision order + 1)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    node = parse(expr) if isinstance(expr, str) else expr
    return (evaluator or Evaluator()).eval(node, order + 1)
