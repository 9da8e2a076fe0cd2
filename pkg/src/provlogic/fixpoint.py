"""Explicit fixed points for GL via uniform interpolation.

For beta with p occurring only under boxes, the fixed point is the
post-interpolant of box(p <-> beta) & beta, certified by an actual proof of
gamma <-> beta(gamma).
"""

from __future__ import annotations

from .formula import Formula, atom, box, conj, iff, imp, neg, substitute, variables
from .interpolate import InterpolationTask, exists, forall
from .proofkit import InternalError, Proof
from .prover_gl import extract_proof_gl, search_gl
from .sequent import EMPTY, Logic, Sequent, mset

__all__ = ["FixpointResult", "is_modalized", "fixed_point", "dual_fixed_point"]


class FixpointResult:
    """The fixed point gamma of beta(p) plus its checked certificate."""

    __slots__ = ("beta", "var", "gamma", "certificate")

    def __init__(self, beta: Formula, var: str, gamma: Formula, certificate: Proof):
        self.beta = beta
        self.var = var
        self.gamma = gamma
        self.certificate = certificate

    def __repr__(self) -> str:
        return f"<FixpointResult {self.var} in {self.beta}: {self.gamma}>"


def is_modalized(beta: Formula, var: str) -> bool:
    """Every occurrence of var lies under a box."""

    def go(f: Formula, boxed: bool) -> bool:
        k = f.kind
        if k == "atom":
            return boxed or f.name != var
        if k == "bot":
            return True
        if k == "box":
            return go(f.child, True)
        if k == "not":
            return go(f.child, boxed)
        return go(f.left, boxed) and go(f.right, boxed)

    return go(beta, False)


def fixed_point(beta: Formula, var: str) -> FixpointResult:
    """Compute gamma with gamma <-> beta(gamma) provable in GL, certified."""
    if not is_modalized(beta, var):
        raise ValueError(f"{var} is not modalized in {beta}")
    p = atom(var)
    gamma = exists(conj(box(iff(p, beta)), beta), var, Logic.GL)
    goal = Sequent(Logic.GL, EMPTY, mset([iff(gamma, substitute(beta, var, gamma))]))
    tree = search_gl(goal)
    if not tree.provable:
        raise InternalError(f"fixed point equation not provable: [{goal}]")
    return FixpointResult(beta, var, gamma, extract_proof_gl(tree))


def dual_fixed_point(beta: Formula, var: str) -> Formula:
    """The forall-based construction; provably equivalent to fixed_point's
    gamma (used to cross-check uniqueness)."""
    if not is_modalized(beta, var):
        raise ValueError(f"{var} is not modalized in {beta}")
    fresh = "r0"
    while fresh in variables(beta) or fresh == var:
        fresh += "0"
    subst = substitute(beta, var, atom(fresh))
    body = imp(box(iff(atom(fresh), subst)), subst)
    s = Sequent(Logic.GL, EMPTY, mset([body]))
    return forall(s, fresh, InterpolationTask(Logic.GL, s, fresh))
