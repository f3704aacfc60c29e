"""Serre quotients, Gabriel monads, and the checker suites.

Everything here is generic over a localizing theory: an engine together
with the bundle (is_in_c, h_c, saturate, is_saturated, extend_along_unit,
c_cogenerators).  The quotient category keeps the objects of the ambient
category; a quotient morphism M -> N is stored by its canonical
representative M -> W(N), which turns Hom computations and equality into
single ambient-category questions and avoids the direct limit entirely.
The direct-limit construction is still available as an independent oracle
(q_hom_via_colimit) on engines that can enumerate subobjects.

The five saturating axioms checked by check_saturating_axioms, for an
endofunctor W with unit eta over a torsion class C:

  (1) W kills C;
  (2) every W-image is saturated;
  (3) W is exact as a functor to the saturated subcategory, tested as
      "homology of the W-image of a short exact sequence lies in C";
  (4) eta at W(M) agrees with W applied to eta at M;
  (5) eta is an isomorphism on saturated objects.

A monad satisfying these is naturally isomorphic to the reflection monad
of the theory, which check_gabriel_equivalence verifies componentwise.
All suites are deterministic functions of (seed, n); every failure is
reported with a witness that can be replayed in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import hom_map_is_bijective, rng_for
from .errors import (
    EndpointMismatch, NotInvertible, NotSaturatedError, OracleUnsupported,
)


@dataclass(frozen=True)
class QuotientMorphism:
    """A morphism Q(M) -> Q(N), stored as its representative M -> W(N)."""

    src: object
    dst: object
    rep: object


@dataclass(frozen=True)
class MonadData:
    """The reflection monad at one object: W(M), unit, multiplication."""

    obj: object
    w: object
    eta: object
    mu: object


# ---------------------------------------------------------------------------
# monad operations


def monad_at(theory, m) -> MonadData:
    """W(M), eta_M, and mu_M = inverse of eta at W(M).

    Raises NotSaturatedError when eta at W(M) fails to be invertible,
    which would mean the theory's saturation contract is broken.
    """
    w, eta = theory.saturate(m)
    _, eta_w = theory.saturate(w)
    if not theory.engine.is_iso(eta_w):
        raise NotSaturatedError("unit is not invertible at a W-image")
    mu = theory.engine.invert(eta_w)
    return MonadData(m, w, eta, mu)


def w_on_morphism(theory, f):
    """The unique W(f) with W(f) after eta_M equal to eta_N after f.

    Computed as the extension of eta_N after f along eta_M.  Broken
    theories can produce non-saturated W-images; as long as their unit is
    epic the functor action still exists as a colift, so fall back to that.
    """
    e = theory.engine
    w_n, eta_n = theory.saturate(f.dst)
    comp = e.compose(f, eta_n)
    if theory.is_saturated(w_n):
        return theory.extend_along_unit(comp)
    _, eta_m = theory.saturate(f.src)
    psi = e.colift_along_epi(comp, eta_m)
    assert psi is not None
    return psi


def q_is_zero(theory, m) -> bool:
    """Whether M becomes zero in the quotient (tested via the zero map)."""
    z = theory.engine.zero_morphism(theory.engine.zero_object(), m)
    return q_is_iso(theory, z)


def q_is_iso(theory, f) -> bool:
    """Whether f is inverted by the quotient: kernel and cokernel in C."""
    e = theory.engine
    return theory.is_in_c(e.kernel_emb(f).src) and theory.is_in_c(e.cokernel_proj(f).dst)


def q_eq(theory, f, g) -> bool:
    """Whether two ambient morphisms have the same image in the quotient."""
    e = theory.engine
    diff = e.sub(f, g)
    return theory.is_in_c(e.image_emb(diff).src)


def q_id(theory, m) -> QuotientMorphism:
    _, eta = theory.saturate(m)
    return QuotientMorphism(m, m, eta)


def q_of(theory, f) -> QuotientMorphism:
    """The image of an ambient morphism under the canonical functor."""
    _, eta = theory.saturate(f.dst)
    return QuotientMorphism(f.src, f.dst, theory.engine.compose(f, eta))


def qmor_eq(theory, f: QuotientMorphism, g: QuotientMorphism) -> bool:
    if f.src != g.src or f.dst != g.dst:
        raise EndpointMismatch("quotient morphisms have different endpoints")
    return theory.engine.eq_mor(f.rep, g.rep)


def qmor_add(theory, f: QuotientMorphism, g: QuotientMorphism) -> QuotientMorphism:
    if f.src != g.src or f.dst != g.dst:
        raise EndpointMismatch("quotient morphisms have different endpoints")
    return QuotientMorphism(f.src, f.dst, theory.engine.add(f.rep, g.rep))


def q_compose(theory, f: QuotientMorphism, g: QuotientMorphism) -> QuotientMorphism:
    """Composite of canonical representatives via mu at the final target."""
    if f.dst != g.src:
        raise EndpointMismatch("quotient composition needs matching endpoints")
    data = monad_at(theory, g.dst)
    rep = theory.engine.compose(theory.engine.compose(f.rep, w_on_morphism(theory, g.rep)),
                                data.mu)
    return QuotientMorphism(f.src, g.dst, rep)


def colift_H(theory, f: QuotientMorphism):
    """The section-side image of f: the ambient morphism W(M) -> W(N)."""
    return theory.extend_along_unit(f.rep)


def quotient_invert(theory, f: QuotientMorphism) -> QuotientMorphism:
    """Inverse of a quotient morphism whose representative lies in Sigma."""
    amb = colift_H(theory, f)
    if not theory.engine.is_iso(amb):
        raise NotInvertible("quotient morphism is not invertible")
    back = theory.engine.invert(amb)
    _, eta = theory.saturate(f.dst)
    return QuotientMorphism(f.dst, f.src, theory.engine.compose(eta, back))


class QHomGroup:
    """Hom in the quotient, realized as Hom(M, W(N)) in the ambient category."""

    def __init__(self, theory, src, dst):
        self.theory = theory
        self.src = src
        self.dst = dst
        w, _ = theory.saturate(dst)
        self.w_dst = w
        self.inner = theory.engine.hom_group(src, w)

    @property
    def ngens(self):
        return self.inner.ngens

    def decode(self, coeffs) -> QuotientMorphism:
        return QuotientMorphism(self.src, self.dst, self.inner.decode(coeffs))

    def encode(self, f: QuotientMorphism):
        return self.inner.encode(f.rep)

    def invariants(self):
        return self.inner.invariants()

    def is_zero_group(self):
        return self.inner.is_zero_group()

    def enumerate_elements(self, cap=4096):
        return self.inner.enumerate_elements(cap)

    def random_element(self, rng):
        return self.inner.random_element(rng)

    def describe(self):
        return self.inner.describe()


def q_hom(theory, m, n) -> QHomGroup:
    return QHomGroup(theory, m, n)


def cokernel_in_sat(theory, f):
    """Cokernel of a morphism between objects without C-subobjects, taken
    in the saturated subcategory: the reflection of the ambient cokernel."""
    e = theory.engine
    for end in (f.src, f.dst):
        if not e.is_zero_obj(theory.h_c(end).src):
            raise NotSaturatedError("endpoints must have no subobject in C")
    coker = e.cokernel_proj(f).dst
    w, _ = theory.saturate(coker)
    return w


# ---------------------------------------------------------------------------
# the direct-limit Hom oracle


class ColimitHom:
    """Hom in the quotient computed from its direct-limit description.

    Enumerates all subobjects M' <= M whose quotient lies in C, locates
    the terminal stage of the resulting directed system (the intersection
    of all admissible subobjects), and evaluates Hom(M'_min, N/H_C(N))
    there.  Entirely independent of the reflection shortcut apart from
    the comparison map.
    """

    def __init__(self, theory, m, n):
        if not getattr(theory, "supports_subobject_enumeration", False):
            raise OracleUnsupported("engine cannot enumerate subobjects exhaustively")
        e = theory.engine
        self.theory = theory
        self.m = m
        self.n = n
        self.nbar_proj = e.cokernel_proj(theory.h_c(n))
        nbar = self.nbar_proj.dst

        embs = theory.subobject_embeddings(m)
        admissible = [emb for emb in embs
                      if theory.is_in_c(e.cokernel_proj(emb).dst)]
        assert admissible, "M itself is always an admissible stage"
        admissible.sort(key=lambda emb: e.order(emb.src))
        minimal = admissible[0]
        # the directed system is ordered by reverse inclusion; its terminal
        # stage must factor through every other stage
        self.transitions = []
        for emb in admissible:
            inc = e.lift_along_mono(minimal, emb)
            assert inc is not None, "admissible subobjects must be intersection-closed"
            self.transitions.append(inc)
        self.stages = len(admissible)
        self.minimal_emb = minimal
        self.group = e.hom_group(minimal.src, nbar)

    def invariants(self):
        return self.group.invariants()

    def is_zero_group(self):
        return self.group.is_zero_group()

    def describe(self):
        d = self.group.describe()
        d["stages"] = self.stages
        return d

    def comparison_images(self, qhom: QHomGroup):
        """Each colimit basis element encoded in the shortcut Hom-group."""
        theory = self.theory
        e = theory.engine
        _, eta_m = theory.saturate(self.m)
        w_emb = w_on_morphism(theory, self.minimal_emb)
        w_emb_inv = e.invert(w_emb)
        w_proj = w_on_morphism(theory, self.nbar_proj)
        w_proj_inv = e.invert(w_proj)
        head = e.compose(eta_m, w_emb_inv)
        out = []
        for b in self.group.basis:
            rep = e.compose(e.compose(head, w_on_morphism(theory, b)), w_proj_inv)
            out.append(qhom.encode(QuotientMorphism(self.m, self.n, rep)))
        return out

    def comparison_is_bijective(self, qhom: QHomGroup) -> bool:
        return hom_map_is_bijective(self.group, qhom.inner,
                                    self.comparison_images(qhom))


def q_hom_via_colimit(theory, m, n) -> ColimitHom:
    return ColimitHom(theory, m, n)


# ---------------------------------------------------------------------------
# monad candidates


class MonadCandidate:
    """An endofunctor-with-unit handed to the checker suites."""

    def __init__(self, theory, tag):
        self.theory = theory
        self.tag = tag

    def w_obj(self, m):
        raise NotImplementedError

    def unit(self, m):
        raise NotImplementedError

    def w_mor(self, f):
        raise NotImplementedError


class CanonicalCandidate(MonadCandidate):
    """The theory's own reflection data (the Gabriel monad when the theory
    is genuinely localizing; the broken naive candidate for the fixture)."""

    def __init__(self, theory, tag="gabriel"):
        super().__init__(theory, tag)

    def w_obj(self, m):
        return self.theory.saturate(m)[0]

    def unit(self, m):
        return self.theory.saturate(m)[1]

    def w_mor(self, f):
        return w_on_morphism(self.theory, f)


class IdentityCandidate(MonadCandidate):
    """The identity functor with identity unit; fails axiom (1) whenever C
    contains a nonzero object."""

    def __init__(self, theory):
        super().__init__(theory, "identity")

    def w_obj(self, m):
        return m

    def unit(self, m):
        return self.theory.engine.identity(m)

    def w_mor(self, f):
        return f


class TwistedCandidate(MonadCandidate):
    """The reflection composed with a nontrivial natural automorphism of W
    (a scalar that is invertible on every saturated object)."""

    def __init__(self, theory):
        super().__init__(theory, "twisted")
        self._base = CanonicalCandidate(theory)

    def w_obj(self, m):
        return self._base.w_obj(m)

    def unit(self, m):
        return self.theory.twist_unit(self._base.unit(m))

    def w_mor(self, f):
        return self._base.w_mor(f)


def make_candidate(theory, tag) -> MonadCandidate:
    if tag in (None, "gabriel"):
        label = "fixture-naive" if theory.kind == "fixture" else "gabriel"
        return CanonicalCandidate(theory, label)
    if tag == "fixture-naive":
        return CanonicalCandidate(theory, "fixture-naive")
    if tag == "identity":
        return IdentityCandidate(theory)
    if tag == "twisted":
        return TwistedCandidate(theory)
    raise ValueError(f"unknown candidate tag: {tag}")


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckItem:
    label: str
    passed: bool
    samples: int
    detail: str = ""
    witness: dict | None = None

    def to_dict(self, witness_codec=None):
        d = {"axiom": self.label, "pass": self.passed, "samples": self.samples}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = witness_codec(self.witness) if witness_codec else self.witness
        return d


@dataclass
class AxiomReport:
    suite: str
    engine: dict
    candidate: str
    seed: int
    n: int
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    @property
    def first_failure(self):
        for i in self.items:
            if not i.passed:
                return i
        return None

    def to_dict(self, witness_codec=None):
        return {
            "suite": self.suite,
            "engine": self.engine,
            "candidate": self.candidate,
            "seed": self.seed,
            "n": self.n,
            "pass": self.passed,
            "checks": [i.to_dict(witness_codec) for i in self.items],
        }


# ---------------------------------------------------------------------------
# samples


def sample_objects(theory, seed, suite, n, max_order=None):
    """Deterministic probe objects followed by n seeded random ones."""
    out = list(theory.probe_objects())
    for i in range(n):
        out.append(theory.random_object(rng_for(seed, suite, "obj", i),
                                        max_order=max_order))
    return out


def sample_morphisms(theory, seed, suite, n):
    out = []
    for i in range(n):
        rng = rng_for(seed, suite, "mor", i)
        m = theory.random_object(rng)
        nn = theory.random_object(rng)
        out.append(theory.random_morphism(rng, m, nn))
    return out


def sample_sess(theory, seed, suite, n):
    return [theory.random_ses(rng_for(seed, suite, "ses", i)) for i in range(n)]


def _scan(label, samples, pred, witness_base):
    """Run a per-sample predicate, recording the first counterexample."""
    for idx, s in enumerate(samples):
        ok, detail, data = pred(idx, s)
        if not ok:
            w = dict(witness_base)
            w.update({"check": label, "index": idx, "data": data})
            return CheckItem(label, False, idx + 1, detail, w)
    return CheckItem(label, True, len(samples), "", None)


# ---------------------------------------------------------------------------
# single-sample predicates (shared by the suites and by witness replay)


def pred_monad_assoc(theory, m):
    e = theory.engine
    d1 = monad_at(theory, m)
    d2 = monad_at(theory, d1.w)
    w_mu = w_on_morphism(theory, d1.mu)
    lhs = e.compose(w_mu, d1.mu)
    rhs = e.compose(d2.mu, d1.mu)
    ok = e.eq_mor(lhs, rhs)
    return ok, "" if ok else "mu . W(mu) differs from mu . mu(W)"


def pred_monad_unit(theory, m):
    e = theory.engine
    d = monad_at(theory, m)
    _, eta_w = theory.saturate(d.w)
    w_eta = w_on_morphism(theory, d.eta)
    ident = e.identity(d.w)
    ok = (e.eq_mor(e.compose(w_eta, d.mu), ident)
          and e.eq_mor(e.compose(eta_w, d.mu), ident))
    return ok, "" if ok else "unit coherence fails"


def pred_mu_iso(theory, m):
    w, _ = theory.saturate(m)
    _, eta_w = theory.saturate(w)
    ok = theory.engine.is_iso(eta_w)
    return ok, "" if ok else "unit at W(M) is not invertible"


def pred_unit_swap(theory, m):
    e = theory.engine
    w, eta = theory.saturate(m)
    _, eta_w = theory.saturate(w)
    ok = e.eq_mor(w_on_morphism(theory, eta), eta_w)
    return ok, "" if ok else "W(eta) differs from eta(W)"


def pred_zigzag(theory, m):
    e = theory.engine
    w, eta = theory.saturate(m)
    q_eta = q_of(theory, eta)
    if not q_is_iso(theory, eta):
        return False, "unit is not inverted by the quotient"
    delta = quotient_invert(theory, q_eta)
    if not qmor_eq(theory, q_compose(theory, q_eta, delta), q_id(theory, m)):
        return False, "first zig-zag composite is not the identity"
    if not qmor_eq(theory, q_compose(theory, delta, q_eta), q_id(theory, w)):
        return False, "counit construction is not two-sided"
    _, eta_w = theory.saturate(w)
    second = e.compose(eta_w, colift_H(theory, delta))
    if not e.eq_mor(second, e.identity(w)):
        return False, "second zig-zag composite is not the identity"
    return True, ""


def pred_axiom1(theory, candidate, m):
    if not theory.is_in_c(m):
        return True, ""
    ok = theory.engine.is_zero_obj(candidate.w_obj(m))
    return ok, "" if ok else "W does not kill an object of C"


def pred_axiom2(theory, candidate, m):
    wm = candidate.w_obj(m)
    e = theory.engine
    for t in theory.c_cogenerators(theory.cogenerator_bound()):
        hg = e.hom_group(t, wm)
        if not hg.is_zero_group():
            return False, f"Hom(T, W(M)) = {hg.describe()} for T = {t!r}"
        xg = e.ext1_group(t, wm)
        if not xg.is_zero_group():
            return False, f"Ext1(T, W(M)) = {xg.describe()} for T = {t!r}"
    if not theory.is_saturated(wm):
        return False, "structural saturation test fails beyond the cogenerator family"
    return True, ""


def pred_axiom3(theory, candidate, ses):
    e = theory.engine
    a = candidate.w_mor(ses.iota)
    b = candidate.w_mor(ses.pi)
    if not e.eq_mor(e.compose(a, b), e.zero_morphism(a.src, b.dst)):
        return False, "W-image of the sequence does not compose to zero"
    if not theory.is_in_c(e.kernel_emb(a).src):
        return False, "homology at the sub position leaves C"
    if not theory.is_in_c(e.homology_at(a, b)):
        return False, "homology at the middle position leaves C"
    if not theory.is_in_c(e.cokernel_proj(b).dst):
        return False, "homology at the quotient position leaves C"
    return True, ""


def pred_axiom4(theory, candidate, m):
    e = theory.engine
    wm = candidate.w_obj(m)
    lhs = candidate.unit(wm)
    rhs = candidate.w_mor(candidate.unit(m))
    ok = e.eq_mor(lhs, rhs)
    return ok, "" if ok else "unit at W(M) differs from W of the unit"


def pred_axiom5(theory, candidate, m):
    if not theory.is_saturated(m):
        return True, ""
    ok = theory.engine.is_iso(candidate.unit(m))
    return ok, "" if ok else "unit is not invertible on a saturated object"


def pred_unit_natural(theory, candidate, f):
    e = theory.engine
    lhs = e.compose(f, candidate.unit(f.dst))
    rhs = e.compose(candidate.unit(f.src), candidate.w_mor(f))
    ok = e.eq_mor(lhs, rhs)
    return ok, "" if ok else "unit naturality square does not commute"


def pred_functorial(theory, candidate, f, g):
    e = theory.engine
    if not e.eq_mor(candidate.w_mor(e.identity(f.src)), e.identity(candidate.w_obj(f.src))):
        return False, "W does not preserve identities"
    lhs = candidate.w_mor(e.compose(f, g))
    rhs = e.compose(candidate.w_mor(f), candidate.w_mor(g))
    ok = e.eq_mor(lhs, rhs)
    return ok, "" if ok else "W does not preserve composition"


def pred_ker_q(theory, m):
    ok = q_is_zero(theory, m) == theory.is_in_c(m)
    return ok, "" if ok else "Q-vanishing disagrees with C-membership"


def pred_equiv_component(theory, candidate, m):
    e = theory.engine
    lam = theory.extend_along_unit(candidate.unit(m))
    if not e.is_iso(lam):
        return False, "comparison component is not an isomorphism"
    _, eta = theory.saturate(m)
    if not e.eq_mor(e.compose(eta, lam), candidate.unit(m)):
        return False, "comparison component does not intertwine the units"
    return True, ""


def pred_equiv_natural(theory, candidate, f):
    e = theory.engine
    lam_src = theory.extend_along_unit(candidate.unit(f.src))
    lam_dst = theory.extend_along_unit(candidate.unit(f.dst))
    if not (e.is_iso(lam_src) and e.is_iso(lam_dst)):
        return False, "comparison component is not an isomorphism"
    kappa_src = e.invert(lam_src)
    kappa_dst = e.invert(lam_dst)
    lhs = e.compose(candidate.w_mor(f), kappa_dst)
    rhs = e.compose(kappa_src, w_on_morphism(theory, f))
    ok = e.eq_mor(lhs, rhs)
    return ok, "" if ok else "naturality square of the comparison fails"


# ---------------------------------------------------------------------------
# suites


def check_monad_laws(theory, seed, n) -> AxiomReport:
    report = AxiomReport("monad-laws", theory.describe(), "gabriel", seed, n)
    objs = sample_objects(theory, seed, "monad-laws", n)
    base = {"suite": "monad-laws", "engine": theory.describe(),
            "candidate": "gabriel", "seed": seed}
    report.items.append(_scan(
        "monad-assoc", objs,
        lambda i, m: (*pred_monad_assoc(theory, m), {"object": m}), base))
    report.items.append(_scan(
        "monad-unit", objs,
        lambda i, m: (*pred_monad_unit(theory, m), {"object": m}), base))
    return report


def check_idempotent(theory, seed, n) -> AxiomReport:
    report = AxiomReport("idempotent", theory.describe(), "gabriel", seed, n)
    objs = sample_objects(theory, seed, "idempotent", n)
    base = {"suite": "idempotent", "engine": theory.describe(),
            "candidate": "gabriel", "seed": seed}
    report.items.append(_scan(
        "mu-iso", objs,
        lambda i, m: (*pred_mu_iso(theory, m), {"object": m}), base))
    report.items.append(_scan(
        "unit-swap", objs,
        lambda i, m: (*pred_unit_swap(theory, m), {"object": m}), base))
    return report


def check_zigzag(theory, seed, n) -> AxiomReport:
    report = AxiomReport("zigzag", theory.describe(), "gabriel", seed, n)
    objs = sample_objects(theory, seed, "zigzag", n)
    base = {"suite": "zigzag", "engine": theory.describe(),
            "candidate": "gabriel", "seed": seed}
    report.items.append(_scan(
        "zigzag-identities", objs,
        lambda i, m: (*pred_zigzag(theory, m), {"object": m}), base))
    return report


def check_saturating_axioms(theory, candidate, seed, n, n_ses=None) -> AxiomReport:
    if n_ses is None:
        n_ses = max(1, n // 2)
    report = AxiomReport("saturating", theory.describe(), candidate.tag, seed, n)
    objs = sample_objects(theory, seed, "saturating", n)
    mors = sample_morphisms(theory, seed, "saturating", n)
    sess = sample_sess(theory, seed, "saturating", n_ses)
    base = {"suite": "saturating", "engine": theory.describe(),
            "candidate": candidate.tag, "seed": seed}
    report.items.append(_scan(
        "saturating-1-kills-c", objs,
        lambda i, m: (*pred_axiom1(theory, candidate, m), {"object": m}), base))
    report.items.append(_scan(
        "saturating-2-image-saturated", objs,
        lambda i, m: (*pred_axiom2(theory, candidate, m), {"object": m}), base))
    report.items.append(_scan(
        "saturating-3-exact", sess,
        lambda i, s: (*pred_axiom3(theory, candidate, s), {"ses": s}), base))
    report.items.append(_scan(
        "saturating-4-unit-commutes", objs,
        lambda i, m: (*pred_axiom4(theory, candidate, m), {"object": m}), base))
    report.items.append(_scan(
        "saturating-5-unit-iso-on-saturated", objs,
        lambda i, m: (*pred_axiom5(theory, candidate, m), {"object": m}), base))
    report.items.append(_scan(
        "unit-natural", mors,
        lambda i, f: (*pred_unit_natural(theory, candidate, f), {"morphism": f}), base))
    pairs = []
    for i in range(max(1, n // 2)):
        rng = rng_for(seed, "saturating", "pair", i)
        a = theory.random_object(rng)
        b = theory.random_object(rng)
        c = theory.random_object(rng)
        f = theory.random_morphism(rng, a, b)
        g = theory.random_morphism(rng, b, c)
        pairs.append((f, g))
    report.items.append(_scan(
        "functorial", pairs,
        lambda i, p: (*pred_functorial(theory, candidate, *p),
                      {"morphism": p[0], "morphism2": p[1]}), base))
    return report


def check_gabriel_equivalence(theory, candidate, seed, n) -> AxiomReport:
    report = AxiomReport("gabriel-equiv", theory.describe(), candidate.tag, seed, n)
    pre = check_saturating_axioms(theory, candidate, seed, min(n, 12))
    if not pre.passed:
        first = pre.first_failure
        item = CheckItem("precondition-saturating", False, first.samples,
                         f"candidate rejected: fails {first.label}", first.witness)
        report.items.append(item)
        return report
    report.items.append(CheckItem("precondition-saturating", True, pre.n, "", None))
    objs = sample_objects(theory, seed, "gabriel-equiv", n)
    mors = sample_morphisms(theory, seed, "gabriel-equiv", n)
    base = {"suite": "gabriel-equiv", "engine": theory.describe(),
            "candidate": candidate.tag, "seed": seed}
    report.items.append(_scan(
        "comparison-iso", objs,
        lambda i, m: (*pred_equiv_component(theory, candidate, m), {"object": m}), base))
    report.items.append(_scan(
        "comparison-natural", mors,
        lambda i, f: (*pred_equiv_natural(theory, candidate, f), {"morphism": f}), base))
    return report


def check_ker_q_equals_c(theory, seed, n) -> AxiomReport:
    report = AxiomReport("ker-q", theory.describe(), "gabriel", seed, n)
    objs = sample_objects(theory, seed, "ker-q", n)
    base = {"suite": "ker-q", "engine": theory.describe(),
            "candidate": "gabriel", "seed": seed}
    report.items.append(_scan(
        "ker-q-equals-c", objs,
        lambda i, m: (*pred_ker_q(theory, m), {"object": m}), base))
    return report


SUITES = ("monad-laws", "idempotent", "zigzag", "saturating", "gabriel-equiv", "ker-q")


def run_suite(theory, suite, seed, n, candidate_tag=None):
    """Run one named suite (or every suite for "all"); returns a list of
    AxiomReport values."""
    if suite == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(theory, s, seed, n, candidate_tag))
        return out
    if suite == "monad-laws":
        return [check_monad_laws(theory, seed, n)]
    if suite == "idempotent":
        return [check_idempotent(theory, seed, n)]
    if suite == "zigzag":
        return [check_zigzag(theory, seed, n)]
    if suite == "saturating":
        return [check_saturating_axioms(theory, make_candidate(theory, candidate_tag), seed, n)]
    if suite == "gabriel-equiv":
        return [check_gabriel_equivalence(theory, make_candidate(theory, candidate_tag), seed, n)]
    if suite == "ker-q":
        return [check_ker_q_equals_c(theory, seed, n)]
    raise ValueError(f"unknown suite: {suite}")


# ---------------------------------------------------------------------------
# witness replay

REPLAY_OBJECT_CHECKS = {
    "monad-assoc": pred_monad_assoc,
    "monad-unit": pred_monad_unit,
    "mu-iso": pred_mu_iso,
    "unit-swap": pred_unit_swap,
    "zigzag-identities": pred_zigzag,
    "ker-q-equals-c": pred_ker_q,
}

REPLAY_CANDIDATE_OBJECT_CHECKS = {
    "saturating-1-kills-c": pred_axiom1,
    "saturating-2-image-saturated": pred_axiom2,
    "saturating-4-unit-commutes": pred_axiom4,
    "saturating-5-unit-iso-on-saturated": pred_axiom5,
    "comparison-iso": pred_equiv_component,
}

REPLAY_CANDIDATE_MORPHISM_CHECKS = {
    "unit-natural": pred_unit_natural,
    "comparison-natural": pred_equiv_natural,
}


def replay_check(theory, candidate_tag, check, data):
    """Re-run the single check named by a witness on decoded data.

    Returns (passed, detail).  Raises KeyError for an unknown check name.
    """
    if check in REPLAY_OBJECT_CHECKS:
        return REPLAY_OBJECT_CHECKS[check](theory, data["object"])
    candidate = make_candidate(theory, candidate_tag)
    if check in REPLAY_CANDIDATE_OBJECT_CHECKS:
        return REPLAY_CANDIDATE_OBJECT_CHECKS[check](theory, candidate, data["object"])
    if check in REPLAY_CANDIDATE_MORPHISM_CHECKS:
        return REPLAY_CANDIDATE_MORPHISM_CHECKS[check](theory, candidate, data["morphism"])
    if check == "saturating-3-exact":
        return pred_axiom3(theory, candidate, data["ses"])
    if check == "functorial":
        return pred_functorial(theory, candidate, data["morphism"], data["morphism2"])
    if check == "precondition-saturating":
        inner = data.get("inner_check")
        if inner:
            return replay_check(theory, candidate_tag, inner, data)
        raise KeyError("precondition witness lacks an inner check")
    raise KeyError(f"unknown check: {check}")
