"""Batch verification suites for the library's structural claims.

Each suite takes a weight system (with a diagonal realization where needed)
and returns pass/fail with the offending quantity, or a skip with the
reason.  Nothing is skipped silently.

Suites:

    classification_echo   spectrum-derived classification equals the
                          weight-sum classification
    numerology_identities fano index / critical twist / discrepancy formulas
    link_piece            the link piece at p = n - k is one-dimensional
    omega_window          vanishing of the top two twisted exterior powers in
                          the window 1..a-1 and the single h^1 = 1 at the
                          critical twist (levels k >= 2)
    log_window            the log-forms restriction: (h0, h1) = (0, 0) below
                          the critical twist and (0, 1) there (levels k >= 2)
    wedge_vanishing       H^i(wedge^(i+1) T_WP|E(-(i+1)d)) = 0 for
                          1 <= i <= k - 1 (levels k >= 2)
    t1_bottom_weight      graded T^1 starts at weight -d with dimension 1,
                          matching the log-forms h^1 at the critical twist
    primitive_middle      the Jacobian-ring primitive middle Hodge number at
                          p = n - k - 1 equals the link piece (= 1)
"""

from dataclasses import dataclass

from . import cohomology as coh
from . import spectrum as spec
from .weights import Certification, classify, numerology, quasismooth_candidate_check

SUITES = (
    "classification_echo",
    "numerology_identities",
    "link_piece",
    "omega_window",
    "log_window",
    "wedge_vanishing",
    "t1_bottom_weight",
    "primitive_middle",
)


@dataclass(frozen=True)
class SuiteOutcome:
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""

    def to_json(self):
        return {"status": self.status, "detail": self.detail}


def _skip(reason):
    return SuiteOutcome("skipped", reason)


def _fail(detail):
    return SuiteOutcome("fail", detail)


_PASS = SuiteOutcome("pass")


def _diagonal(ws):
    if quasismooth_candidate_check(ws) is not Certification.CERTIFIED:
        return None
    return spec.DiagonalSingularity(tuple(ws.degree // a for a in ws.weights))


def suite_classification_echo(ws, cap=None):
    sing = _diagonal(ws)
    if sing is None:
        return _skip("no diagonal realization")
    try:
        echoed = spec.classify_from_spectrum(sing, cap)
    except spec.CapExceeded as exc:
        return _skip(str(exc))
    direct = classify(ws)
    if (echoed.weight_sum, echoed.liminal_k) != (direct.weight_sum, direct.liminal_k):
        return _fail("spectrum gives %s, weights give %s" % (echoed, direct))
    return _PASS


def suite_numerology_identities(ws):
    cls = classify(ws)
    if cls.liminal_k is None:
        return _skip("not liminal")
    k, d = cls.liminal_k, ws.degree
    num = numerology(ws)
    checks = (
        ("fano_index", num.fano_index, d * k),
        ("critical_twist", num.critical_twist, d * (k - 1)),
        ("discrepancy", num.discrepancy, d * k - 1),
        ("canonical_twist_e", num.canonical_twist_e, -d * k),
    )
    for name, got, want in checks:
        if got != want:
            return _fail("%s = %d, expected %d" % (name, got, want))
    return _PASS


def suite_link_piece(ws, cap=None):
    cls = classify(ws)
    if cls.liminal_k is None:
        return _skip("not liminal")
    sing = _diagonal(ws)
    if sing is None:
        return _skip("no diagonal realization")
    try:
        got = spec.gr_f_link(sing, sing.n - cls.liminal_k, cap)
    except spec.CapExceeded as exc:
        return _skip(str(exc))
    if got != 1:
        return _fail("link piece at p = n - k is %d, expected 1" % got)
    return _PASS


def _cohomology_entry(ws):
    """Gate shared by the engine suites: liminal level >= 2 with a certified
    diagonal member.  Returns (hyp, k, critical_twist) or a skip outcome."""
    cls = classify(ws)
    if cls.liminal_k is None:
        return _skip("not liminal")
    if cls.liminal_k < 2:
        return _skip("suite defined only for levels k >= 2")
    if quasismooth_candidate_check(ws) is not Certification.CERTIFIED:
        return _skip("no certified quasi-smooth member")
    if not ws.genuinely_singular:
        return _skip("weights not all below the degree")
    hyp = coh.Hypersurface(ws)
    return hyp, cls.liminal_k, numerology(ws).critical_twist


def suite_omega_window(ws):
    gate = _cohomology_entry(ws)
    if isinstance(gate, SuiteOutcome):
        return gate
    hyp, k, a = gate
    n = hyp.n
    jmax = min(2, n - 1)
    for i in range(1, a + 1):
        top = coh.omega_near_top(hyp, n - 1, i)
        for j in range(jmax + 1):
            if top.dims[j]:
                return _fail("h^%d(Omega^%d_E(%d)) = %d, expected 0" % (j, n - 1, i, top.dims[j]))
        next_top = coh.omega_near_top(hyp, n - 2, i)
        if i < a:
            for j in range(jmax + 1):
                if next_top.dims[j]:
                    return _fail(
                        "h^%d(Omega^%d_E(%d)) = %d, expected 0" % (j, n - 2, i, next_top.dims[j])
                    )
        else:
            want = {1: 1}
            for j in range(jmax + 1):
                if next_top.dims[j] != want.get(j, 0):
                    return _fail(
                        "h^%d(Omega^%d_E(%d)) = %d, expected %d"
                        % (j, n - 2, a, next_top.dims[j], want.get(j, 0))
                    )
    return _PASS


def suite_log_window(ws):
    gate = _cohomology_entry(ws)
    if isinstance(gate, SuiteOutcome):
        return gate
    hyp, k, a = gate
    for i in range(1, a + 1):
        table = coh.log_forms_restricted(hyp, i)
        if not table.exact:
            return _fail("log-forms table at twist %d not forced exact" % i)
        want = (0, 1) if i == a else (0, 0)
        got = (table.dims[0], table.dims[1])
        if got != want:
            return _fail("(h0, h1) at twist %d is %s, expected %s" % (i, got, want))
    return _PASS


def suite_wedge_vanishing(ws):
    gate = _cohomology_entry(ws)
    if isinstance(gate, SuiteOutcome):
        return gate
    hyp, k, _ = gate
    for i in range(1, k):
        dims = coh.wedge_tangent_wp_restricted(hyp, i, degrees=(i,))
        if dims[i]:
            return _fail(
                "h^%d(wedge^%d T_WP|E(%d)) = %d, expected 0"
                % (i, i + 1, -(i + 1) * hyp.degree, dims[i])
            )
    return _PASS


def suite_t1_bottom_weight(ws):
    if quasismooth_candidate_check(ws) is not Certification.CERTIFIED:
        return _skip("no certified quasi-smooth member")
    hyp = coh.Hypersurface(ws)
    table = coh.graded_t1(hyp)
    bottom = min(table)
    if bottom != -ws.degree or table[bottom] != 1:
        return _fail("T^1 starts at weight %d with dim %d" % (bottom, table[bottom]))
    cls = classify(ws)
    if cls.liminal_k is not None and cls.liminal_k >= 2 and ws.genuinely_singular:
        a = numerology(ws).critical_twist
        log_h1 = coh.log_forms_restricted(hyp, a).dims[1]
        if log_h1 != 1:
            return _fail("log-forms h^1 at the critical twist is %d, expected 1" % log_h1)
    return _PASS


def suite_primitive_middle(ws, cap=None):
    cls = classify(ws)
    if cls.liminal_k is None:
        return _skip("not liminal")
    sing = _diagonal(ws)
    if sing is None:
        return _skip("no diagonal realization")
    k = cls.liminal_k
    hyp = coh.Hypersurface(ws)
    prim = coh.griffiths_primitive(hyp, sing.n - k - 1)
    if prim != 1:
        return _fail("primitive middle Hodge number is %d, expected 1" % prim)
    try:
        link = spec.gr_f_link(sing, sing.n - k, cap)
    except spec.CapExceeded as exc:
        return _skip(str(exc))
    if link != prim:
        return _fail("link piece %d differs from primitive number %d" % (link, prim))
    return _PASS


_DISPATCH = {
    "classification_echo": suite_classification_echo,
    "numerology_identities": suite_numerology_identities,
    "link_piece": suite_link_piece,
    "omega_window": suite_omega_window,
    "log_window": suite_log_window,
    "wedge_vanishing": suite_wedge_vanishing,
    "t1_bottom_weight": suite_t1_bottom_weight,
    "primitive_middle": suite_primitive_middle,
}


def run_suite(name, ws):
    fn = _DISPATCH.get(name)
    if fn is None:
        raise KeyError("unknown suite %r; known: %s" % (name, ", ".join(SUITES)))
    return fn(ws)


def run_suites(ws, suites=SUITES):
    return {name: run_suite(name, ws) for name in suites}
