"""Obstructions to extending an A_k structure to A_{k+1}, at cochain level
(page 1), in Hochschild cohomology (page 2), and one page further, plus the
greedy extension solver.

Extending at depth l means the new structure agrees with the old one on
m_2, ..., m_l.  Depth k requires SI(k+1) = 0 on the nose; depth k-1 allows
perturbing m_k, so the obstruction is the class of SI(k+1); depth k-2 also
perturbs m_{k-1} by a cocycle b, shifting the page-2 class by [{m_3}, {b}]
(plus Sq({b}) in the quadratic case k = 4).
"""

from __future__ import annotations

from .ainf import AInfStructure, perturb, require_valid_structure, stasheff_residual
from .cochain import Cochain, bracket, brace, hoch_d
from .cohomology import CohomClass, HHContext, induced_bracket
from .errors import DomainError, UnsupportedDepthError
from .exactla import SparseMatrix, kernel_basis, rref, solve

ENUMERATION_BOUND = 10**6


def obstruction_cocycle(s: AInfStructure) -> Cochain:
    """SI(k+1) for a valid structure; always a Hochschild cocycle."""
    require_valid_structure(s)
    z = stasheff_residual(s, s.k + 1)
    dz = hoch_d(z)
    if not dz.is_zero():
        raise DomainError("obstruction cocycle failed the cocycle check", witness=dz)
    return z


def theta_page2(s: AInfStructure, ctx: HHContext = None) -> CohomClass:
    """Class of SI(k+1) in HH^{k+1, 2-k}; zero iff a perturbation of m_k
    produces a valid A_{k+1} extension with m_{k+1} = 0."""
    if s.k < 3:
        raise DomainError(f"page-2 obstruction needs k >= 3, got k={s.k}")
    if ctx is None:
        ctx = HHContext(s.algebra)
    z = obstruction_cocycle(s)
    return ctx.space(s.k + 1, 2 - s.k).class_of(z)


def page2_witness(s: AInfStructure, ctx: HHContext):
    """b_k with hoch_d(b_k) = -SI(k+1), or None."""
    z = obstruction_cocycle(s)
    return ctx.space(s.k + 1, 2 - s.k).is_coboundary(-z)


class Page3Status:
    """Outcome of the page-3 test: vanishes (with exact witnesses), nonzero
    (with a machine-checkable certificate), or undecided (with a reason)."""

    def __init__(self, kind, b_prev=None, b_top=None, certificate=None, reason=None):
        self.kind = kind  # "vanishes" | "nonzero" | "undecided"
        self.b_prev = b_prev
        self.b_top = b_top
        self.certificate = certificate
        self.reason = reason

    def __repr__(self):
        return f"Page3Status({self.kind})"


class ObstructionReport:
    """Everything known about the obstruction at one k."""

    def __init__(self, k, cocycle, page2_class, page2_witness_cochain, page3):
        self.k = k
        self.cocycle = cocycle
        self.page2_class = page2_class
        self.page2_vanishes = page2_class.is_zero()
        self.page2_witness = page2_witness_cochain
        self.page3 = page3


def _page3_equation_rhs(s: AInfStructure, b_prev: Cochain) -> Cochain:
    """-SI(k+1) - [m3, b_prev] - (b_prev{b_prev} in the quadratic case)."""
    z = stasheff_residual(s, s.k + 1)
    rhs = -(z + bracket(s.map(3), b_prev))
    if 2 * (s.k - 1) == s.k + 2:  # k = 4: b_prev has the same arity as m3
        rhs = rhs - brace(b_prev, [b_prev])
    return rhs


def _verify_page3_witnesses(s: AInfStructure, b_prev: Cochain, b_top: Cochain) -> bool:
    lhs = hoch_d(b_top)
    return (lhs - _page3_equation_rhs(s, b_prev)).is_zero()


def theta_page3_check(s: AInfStructure, ctx: HHContext = None) -> Page3Status:
    """Decide whether SI(k+1) dies after also perturbing m_{k-1} by a
    cocycle.

    For k >= 5 this is linear: the page-2 class must lie in the image of
    [{m_3}, -] from HH^{k-1, 3-k}.  For k = 4 the correction enters
    quadratically; over a small enough finite field the cocycle classes are
    enumerated, over Q only a finite candidate list is tried and failure is
    reported as undecided.
    """
    if s.k < 4:
        raise DomainError(f"page-3 test needs k >= 4, got k={s.k}")
    if ctx is None:
        ctx = HHContext(s.algebra)
    theta = theta_page2(s, ctx)
    space_prev = ctx.space(s.k - 1, 3 - s.k)
    if theta.is_zero():
        b_prev = Cochain.zero(s.algebra, s.k - 1, -1)
        b_top = page2_witness(s, ctx)
        return Page3Status("vanishes", b_prev=b_prev, b_top=b_top)

    field = s.algebra.field
    if s.k >= 5:
        m3_class = ctx.space(3, -1).class_of(s.map(3))
        mat = induced_bracket(ctx, m3_class, s.k - 1, 3 - s.k)
        target = {j: field.neg(c) for j, c in theta.coords.items()}
        x = solve(mat, target)
        if x is None:
            rank = rref(mat)[0]
            aug = SparseMatrix(
                field,
                mat.rows,
                mat.cols + 1,
                dict(mat.entries) | {(i, mat.cols): c for i, c in target.items()},
            )
            certificate = {
                "kind": "rank",
                "rank_image": rank,
                "rank_with_target": rref(aug)[0],
            }
            return Page3Status("nonzero", certificate=certificate)
        b_prev = space_prev.class_from_coords(x).representative
        b_top = ctx.space(s.k + 1, 2 - s.k).is_coboundary(_page3_equation_rhs(s, b_prev))
        if b_top is None:
            raise DomainError("page-3 class solve succeeded but the lift failed")
        return Page3Status("vanishes", b_prev=b_prev, b_top=b_top)

    # k = 4: the equation is Sq({m3 + b}) = 0 over cocycles b.
    top_space = ctx.space(s.k + 1, 2 - s.k)
    dim = space_prev.dim
    if field.char > 0 and field.char**dim <= ENUMERATION_BOUND:
        tried = 0
        for coords in _iterate_coordinate_vectors(field, dim):
            tried += 1
            b_prev = space_prev.class_from_coords(coords).representative
            b_top = top_space.is_coboundary(_page3_equation_rhs(s, b_prev))
            if b_top is not None:
                return Page3Status("vanishes", b_prev=b_prev, b_top=b_top)
        certificate = {"kind": "enumeration", "classes_checked": tried, "dim": dim}
        return Page3Status("nonzero", certificate=certificate)

    candidates = [Cochain.zero(s.algebra, 3, -1)]
    m3_class = ctx.space(3, -1).class_of(s.map(3))
    mat = induced_bracket(ctx, m3_class, 3, -1)
    for v in kernel_basis(mat):
        candidates.append(space_prev.class_from_coords(v).representative)
    for b_prev in candidates:
        b_top = top_space.is_coboundary(_page3_equation_rhs(s, b_prev))
        if b_top is not None:
            return Page3Status("vanishes", b_prev=b_prev, b_top=b_top)
    return Page3Status(
        "undecided",
        reason=(
            "quadratic correction over an infinite field: tried zero and a "
            "generating set of the kernel of the linear part"
        ),
    )


def _iterate_coordinate_vectors(field, dim):
    """All coordinate vectors of F_p^dim in lexicographic order, sparse."""
    p = field.char
    if dim == 0:
        yield {}
        return
    total = p**dim
    for code in range(total):
        coords = {}
        rest = code
        for j in range(dim):
            c = rest % p
            rest //= p
            if c:
                coords[j] = field.from_int(c)
        yield coords


def obstruction_report(s: AInfStructure, ctx: HHContext = None) -> ObstructionReport:
    if ctx is None:
        ctx = HHContext(s.algebra)
    cocycle = obstruction_cocycle(s)
    theta = theta_page2(s, ctx)
    witness = page2_witness(s, ctx) if theta.is_zero() else None
    page3 = theta_page3_check(s, ctx) if s.k >= 4 else None
    return ObstructionReport(s.k, cocycle, theta, witness, page3)


# -- extension solver -----------------------------------------------------------


class ExtensionStep:
    def __init__(self, k, depth, perturbed, report=None):
        self.k = k
        self.depth = depth
        self.perturbed = perturbed  # indices whose maps changed
        self.report = report

    def __repr__(self):
        return f"ExtensionStep(k={self.k}, depth={self.depth}, perturbed={self.perturbed})"


class ExtensionResult:
    def __init__(self, ok, structure=None, report=None, steps=None):
        self.ok = ok
        self.structure = structure
        self.report = report
        self.steps = steps or []


def allowed_depths(k: int):
    """Depths l with max(ceil((k+1)/2), k-2) <= l <= k, deepest last."""
    lo = max((k + 1 + 1) // 2, k - 2)
    return [l for l in range(k, lo - 1, -1)]


def extend_once(s: AInfStructure, l: int, ctx: HHContext = None) -> ExtensionResult:
    """One extension step at depth l in {k, k-1, k-2}; the result agrees
    with s on m_2..m_l and has m_{k+1} = 0."""
    k = s.k
    lo = (k + 2) // 2
    if not (lo <= l <= k):
        raise UnsupportedDepthError(
            f"depth {l} outside the obstruction-theory range [{lo}, {k}] for k={k}"
        )
    if l < k - 2:
        raise UnsupportedDepthError(
            f"depth {l} below the implemented range (k-2 = {k - 2})"
        )
    require_valid_structure(s)
    if ctx is None:
        ctx = HHContext(s.algebra)

    if l == k:
        z = obstruction_cocycle(s)
        if z.is_zero():
            out = s.with_k(k + 1)
            return ExtensionResult(True, structure=out, steps=[ExtensionStep(k, l, [])])
        report = obstruction_report(s, ctx)
        return ExtensionResult(False, report=report)

    if l == k - 1:
        theta = theta_page2(s, ctx)
        if theta.is_zero():
            b_k = page2_witness(s, ctx)
            out = perturb(s, k, b_k).with_k(k + 1)
            require_valid_structure(out)
            return ExtensionResult(
                True, structure=out, steps=[ExtensionStep(k, l, [k] if not b_k.is_zero() else [])]
            )
        report = obstruction_report(s, ctx)
        return ExtensionResult(False, report=report)

    status = theta_page3_check(s, ctx)
    if status.kind == "vanishes":
        out = perturb(perturb(s, k - 1, status.b_prev), k, status.b_top).with_k(k + 1)
        require_valid_structure(out)
        perturbed = [j for j, b in ((k - 1, status.b_prev), (k, status.b_top)) if not b.is_zero()]
        return ExtensionResult(True, structure=out, steps=[ExtensionStep(k, l, perturbed)])
    report = obstruction_report(s, ctx)
    return ExtensionResult(False, report=report)


def extend_to(s: AInfStructure, K: int, ctx: HHContext = None) -> ExtensionResult:
    """Greedy extension to an A_K structure: at each k try the shallowest
    depth first (l = k, then k-1, then k-2), re-validating along the way."""
    require_valid_structure(s)
    if ctx is None:
        ctx = HHContext(s.algebra)
    steps = []
    cur = s
    while cur.k < K:
        advanced = False
        last = None
        for l in allowed_depths(cur.k):
            result = extend_once(cur, l, ctx)
            last = result
            if result.ok:
                cur = result.structure
                steps.extend(result.steps)
                advanced = True
                break
        if not advanced:
            return ExtensionResult(False, report=last.report, steps=steps)
    return ExtensionResult(True, structure=cur, steps=steps)
