"""BiHom structure data and exhaustive axiom checkers.

A StructureBundle attaches optional multiplication/unit/comultiplication/counit
matrices to a BiHomObject.  The checkers verify, by exact matrix equality, the
deformed (co)associativity and (co)unit laws: the comultiplication side is
governed by the object's (alpha, beta) pair, the multiplication side by
(kappa, nu).  Iterated coproducts delta_n and products mu_n are built two
equivalent ways, and generalized (co)associativity is verified for arbitrary
sequences of non-negative arities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .coherence import (
    BIG_PHI,
    BIG_PSI,
    SMALL_PHI,
    SMALL_PSI,
    BiHomObject,
    coherence_map,
    nprod,
    xi_map,
)
from .combinat import validate_index_seq, z_of
from .errors import (
    DimensionMismatch,
    FieldMismatch,
    InvariantViolation,
    MissingMap,
    MixedStructures,
)
from .exactlin import DenseMap, compose, compose_all, kron, kron_all
from .report import CheckReport, compare_entry, make_report

ITERATIVE = "iterative"
ALTERNATIVE = "alternative"


def _expect_shape(name: str, m: DenseMap, dst: int, src: int, field):
    if m.field != field:
        raise FieldMismatch(f"{name} over {m.field}, object over {field}")
    if (m.dst_dim, m.src_dim) != (dst, src):
        raise DimensionMismatch(
            f"{name} is {m.dst_dim}x{m.src_dim}, expected {dst}x{src}"
        )


@dataclass(frozen=True)
class StructureBundle:
    """Optional structure maps mu, eta, delta, epsilon on a BiHomObject."""

    obj: BiHomObject
    mu: Optional[DenseMap] = None
    eta: Optional[DenseMap] = None
    delta: Optional[DenseMap] = None
    epsilon: Optional[DenseMap] = None

    def __post_init__(self):
        d, f = self.obj.dim, self.obj.field
        if self.mu is not None:
            _expect_shape("mu", self.mu, d, d * d, f)
        if self.eta is not None:
            _expect_shape("eta", self.eta, d, 1, f)
        if self.delta is not None:
            _expect_shape("delta", self.delta, d * d, d, f)
        if self.epsilon is not None:
            _expect_shape("epsilon", self.epsilon, 1, d, f)

    def require(self, *names: str):
        for name in names:
            if getattr(self, name) is None:
                raise MissingMap(f"structure has no {name}")

    def replace(self, **kwargs) -> "StructureBundle":
        data = {"obj": self.obj, "mu": self.mu, "eta": self.eta,
                "delta": self.delta, "epsilon": self.epsilon}
        data.update(kwargs)
        return StructureBundle(**data)


@dataclass(frozen=True)
class ModuleInst:
    """A module: carrier x with action x (x) a -> x over a structure on a."""

    carrier: BiHomObject
    action: DenseMap
    over: StructureBundle

    def __post_init__(self):
        x, a = self.carrier, self.over.obj
        if x.field != a.field:
            raise FieldMismatch("module carrier and structure over different fields")
        _expect_shape("action", self.action, x.dim, x.dim * a.dim, x.field)


@dataclass(frozen=True)
class ComoduleInst:
    """A comodule: carrier x with coaction x -> x (x) a."""

    carrier: BiHomObject
    coaction: DenseMap
    over: StructureBundle

    def __post_init__(self):
        x, a = self.carrier, self.over.obj
        if x.field != a.field:
            raise FieldMismatch("comodule carrier and structure over different fields")
        _expect_shape("coaction", self.coaction, x.dim * a.dim, x.dim, x.field)


# ---------------------------------------------------------------------------
# Elementary diagram families
# ---------------------------------------------------------------------------

def _ident(obj: BiHomObject, n: int = 1) -> DenseMap:
    return DenseMap.identity(obj.field, obj.dim ** n)


def _map_morphism_entries(prefix: str, b: StructureBundle, name: str):
    """The structure map must commute with every present endomorphism."""
    obj = b.obj
    f = getattr(b, name)
    entries = []
    for ename, e in obj.endos().items():
        if name == "mu":
            lhs, rhs = compose(e, f), compose(f, kron(e, e))
        elif name == "delta":
            lhs, rhs = compose(f, e), compose(kron(e, e), f)
        elif name == "eta":
            lhs, rhs = compose(e, f), f
        else:  # epsilon
            lhs, rhs = compose(f, e), f
        entries.append(compare_entry(
            f"{prefix}/{name}-commutes-{ename}",
            f"{name} intertwines the endomorphism {ename}", lhs, rhs))
    return entries


def _cosemigroup_entries(b: StructureBundle):
    b.require("delta")
    a, d = b.obj, b.delta
    entries = _map_morphism_entries("cosemigroup", b, "delta")
    phi21 = coherence_map((2, 1), BIG_PHI, [[a, a], [a]])
    phi12 = coherence_map((1, 2), BIG_PHI, [[a], [a, a]])
    lhs = compose_all([phi21, kron(d, _ident(a)), d])
    rhs = compose_all([phi12, kron(_ident(a), d), d])
    entries.append(compare_entry(
        "cosemigroup/coassociativity",
        "deformed coassociativity of the comultiplication", lhs, rhs))
    return entries


def _semigroup_entries(b: StructureBundle):
    b.require("mu")
    a, m = b.obj, b.mu
    a.oplax_pair()  # demand kappa/nu up front
    entries = _map_morphism_entries("semigroup", b, "mu")
    psi21 = coherence_map((2, 1), BIG_PSI, [[a, a], [a]])
    psi12 = coherence_map((1, 2), BIG_PSI, [[a], [a, a]])
    lhs = compose_all([m, kron(m, _ident(a)), psi21])
    rhs = compose_all([m, kron(_ident(a), m), psi12])
    entries.append(compare_entry(
        "semigroup/associativity",
        "deformed associativity of the multiplication", lhs, rhs))
    return entries


def _comonoid_extra_entries(b: StructureBundle):
    b.require("delta", "epsilon")
    a, d, eps = b.obj, b.delta, b.epsilon
    entries = _map_morphism_entries("comonoid", b, "epsilon")
    left = compose(kron(eps, _ident(a)), d)
    right = compose(kron(_ident(a), eps), d)
    entries.append(compare_entry(
        "comonoid/counit-left",
        "counit against the first leg lands on beta",
        left, coherence_map((0, 1), SMALL_PHI, [[], [a]])))
    entries.append(compare_entry(
        "comonoid/counit-right",
        "counit against the second leg lands on alpha",
        right, coherence_map((1, 0), SMALL_PHI, [[a], []])))
    return entries


def _monoid_extra_entries(b: StructureBundle):
    b.require("mu", "eta")
    a, m, e = b.obj, b.mu, b.eta
    entries = _map_morphism_entries("monoid", b, "eta")
    left = compose(m, kron(e, _ident(a)))
    right = compose(m, kron(_ident(a), e))
    entries.append(compare_entry(
        "monoid/unit-left",
        "unit in the first leg lands on nu",
        left, coherence_map((0, 1), SMALL_PSI, [[], [a]])))
    entries.append(compare_entry(
        "monoid/unit-right",
        "unit in the second leg lands on kappa",
        right, coherence_map((1, 0), SMALL_PSI, [[a], []])))
    return entries


def _bisemigroup_extra_entries(b: StructureBundle):
    b.require("mu", "delta")
    a = b.obj
    xi = xi_map(2, 2, [[a, a], [a, a]])
    lhs = compose(b.delta, b.mu)
    rhs = compose_all([kron(b.mu, b.mu), xi, kron(b.delta, b.delta)])
    return [compare_entry(
        "bisemigroup/compatibility",
        "comultiplication of a product via the middle interchange", lhs, rhs)]


def _bimonoid_extra_entries(b: StructureBundle):
    b.require("mu", "eta", "delta", "epsilon")
    entries = [
        compare_entry(
            "bimonoid/counit-multiplicative",
            "counit compatibility square of the bimonoid laws",
            compose(b.epsilon, b.mu), kron(b.epsilon, b.epsilon)),
        compare_entry(
            "bimonoid/unit-comultiplicative",
            "unit compatibility square of the bimonoid laws",
            compose(b.delta, b.eta), kron(b.eta, b.eta)),
        compare_entry(
            "bimonoid/unit-counit",
            "counit of the unit is the identity scalar",
            compose(b.epsilon, b.eta), DenseMap.identity(b.obj.field, 1)),
    ]
    return entries


def check_cosemigroup(b: StructureBundle) -> CheckReport:
    return make_report("cosemigroup", _cosemigroup_entries(b))


def check_semigroup(b: StructureBundle) -> CheckReport:
    return make_report("semigroup", _semigroup_entries(b))


def check_comonoid(b: StructureBundle) -> CheckReport:
    return make_report("comonoid",
                       _cosemigroup_entries(b) + _comonoid_extra_entries(b))


def check_monoid(b: StructureBundle) -> CheckReport:
    return make_report("monoid",
                       _semigroup_entries(b) + _monoid_extra_entries(b))


def check_bisemigroup(b: StructureBundle) -> CheckReport:
    return make_report("bisemigroup",
                       _semigroup_entries(b) + _cosemigroup_entries(b)
                       + _bisemigroup_extra_entries(b))


def check_bimonoid(b: StructureBundle) -> CheckReport:
    entries = (_semigroup_entries(b) + _cosemigroup_entries(b)
               + _monoid_extra_entries(b) + _comonoid_extra_entries(b)
               + _bisemigroup_extra_entries(b) + _bimonoid_extra_entries(b))
    return make_report("bimonoid", entries)


# ---------------------------------------------------------------------------
# Iterated structure maps
# ---------------------------------------------------------------------------

def delta_n(b: StructureBundle, n: int, variant: str = ITERATIVE) -> DenseMap:
    """The n-fold comultiplication a -> a^(x)n.

    n = 1 is the identity and n = 0 is the counit.  For n >= 2 the map is
    built either by splitting off one factor on the left at each step
    (iterative) or by expanding the leftmost factor (alternative); the two
    agree exactly on any valid cosemigroup.
    """
    if n < 0:
        raise ValueError("negative arity")
    a = b.obj
    if n == 0:
        b.require("epsilon")
        return b.epsilon
    if n == 1:
        return _ident(a)
    b.require("delta")
    d = b.delta
    out = d
    for i in range(2, n):
        if variant == ITERATIVE:
            phi = coherence_map((1, i), BIG_PHI, [[a], [a] * i])
            out = compose_all([phi, kron(_ident(a), out), d])
        elif variant == ALTERNATIVE:
            phi = coherence_map((2,) + (1,) * (i - 1), BIG_PHI,
                                [[a, a]] + [[a]] * (i - 1))
            out = compose_all([phi, kron(d, _ident(a, i - 1)), out])
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return out


def mu_n(b: StructureBundle, n: int, variant: str = ITERATIVE) -> DenseMap:
    """The n-fold multiplication a^(x)n -> a (n = 1 identity, n = 0 unit)."""
    if n < 0:
        raise ValueError("negative arity")
    a = b.obj
    if n == 0:
        b.require("eta")
        return b.eta
    if n == 1:
        return _ident(a)
    b.require("mu")
    m = b.mu
    out = m
    for i in range(2, n):
        if variant == ITERATIVE:
            psi = coherence_map((1, i), BIG_PSI, [[a], [a] * i])
            out = compose_all([m, kron(_ident(a), out), psi])
        elif variant == ALTERNATIVE:
            psi = coherence_map((2,) + (1,) * (i - 1), BIG_PSI,
                                [[a, a]] + [[a]] * (i - 1))
            out = compose_all([out, kron(m, _ident(a, i - 1)), psi])
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return out


def check_generalized_coassoc(b: StructureBundle, k: Sequence[int]) -> CheckReport:
    """Nested coproducts along k agree with the flat and the padded coproduct.

    k is a sequence of non-negative integers; zero entries hit the counit, so
    epsilon is required whenever k is empty or contains a zero.
    """
    k = validate_index_seq(k)
    b.require("delta")
    if len(k) == 0 or any(v == 0 for v in k):
        b.require("epsilon")
    a = b.obj
    n = len(k)
    K = sum(k)
    Z = sum(z_of(v) for v in k)
    groups = [[a] * v for v in k]

    nested = compose_all([
        coherence_map(k, BIG_PHI, groups, a.field),
        kron_all(a.field, [delta_n(b, v) for v in k]),
        delta_n(b, n),
    ])
    flat = compose(coherence_map(k, SMALL_PHI, groups, a.field), delta_n(b, K))
    padded = compose(
        kron_all(a.field, [_ident(a, v) if v > 0 else b.epsilon for v in k]),
        delta_n(b, K + Z))

    tag = ",".join(map(str, k))
    entries = [
        compare_entry(f"coassoc[{tag}]/nested-vs-flat",
                      "nested coproducts equal the flat coproduct", nested, flat),
        compare_entry(f"coassoc[{tag}]/nested-vs-padded",
                      "nested coproducts equal the counit-padded coproduct",
                      nested, padded),
    ]
    return make_report("generalized-coassociativity", entries)


def check_generalized_assoc(b: StructureBundle, k: Sequence[int]) -> CheckReport:
    """Dual of check_generalized_coassoc: zero entries hit the unit."""
    k = validate_index_seq(k)
    b.require("mu")
    if len(k) == 0 or any(v == 0 for v in k):
        b.require("eta")
    a = b.obj
    n = len(k)
    K = sum(k)
    Z = sum(z_of(v) for v in k)
    groups = [[a] * v for v in k]

    nested = compose_all([
        mu_n(b, n),
        kron_all(a.field, [mu_n(b, v) for v in k]),
        coherence_map(k, BIG_PSI, groups, a.field),
    ])
    flat = compose(mu_n(b, K), coherence_map(k, SMALL_PSI, groups, a.field))
    padded = compose(
        mu_n(b, K + Z),
        kron_all(a.field, [_ident(a, v) if v > 0 else b.eta for v in k]))

    tag = ",".join(map(str, k))
    entries = [
        compare_entry(f"assoc[{tag}]/nested-vs-flat",
                      "nested products equal the flat product", nested, flat),
        compare_entry(f"assoc[{tag}]/nested-vs-padded",
                      "nested products equal the unit-padded product",
                      nested, padded),
    ]
    return make_report("generalized-associativity", entries)


def coassoc_sequences(max_weight: int):
    """All arity sequences whose padded length K+Z stays within max_weight."""
    out = [()]
    frontier = [()]
    while frontier:
        new = []
        for seq in frontier:
            used = sum(v + z_of(v) for v in seq)
            for v in range(0, max_weight - used + 1):
                if used + v + z_of(v) <= max_weight:
                    ext = seq + (v,)
                    new.append(ext)
        out.extend(new)
        frontier = new
    return out


# ---------------------------------------------------------------------------
# Modules, comodules, Hopf modules
# ---------------------------------------------------------------------------

def _shared_endo_names(x: BiHomObject, a: BiHomObject):
    return [name for name in x.endos() if name in a.endos()]


def check_module(mod: ModuleInst) -> CheckReport:
    """Deformed associativity and unitality of a module action."""
    x, b = mod.carrier, mod.over
    a = b.obj
    b.require("mu")
    rho = mod.action
    entries = []
    for name in _shared_endo_names(x, a):
        ex, ea = x.endos()[name], a.endos()[name]
        entries.append(compare_entry(
            f"module/action-commutes-{name}",
            f"action intertwines the endomorphism {name}",
            compose(ex, rho), compose(rho, kron(ex, ea))))
    psi12 = coherence_map((1, 2), BIG_PSI, [[x], [a, a]])
    psi21 = coherence_map((2, 1), BIG_PSI, [[x, a], [a]])
    entries.append(compare_entry(
        "module/associativity",
        "acting after multiplying equals acting twice",
        compose_all([rho, kron(_ident(x), b.mu), psi12]),
        compose_all([rho, kron(rho, _ident(a)), psi21])))
    if b.eta is not None:
        entries.append(compare_entry(
            "module/unitality",
            "acting by the unit lands on the carrier's kappa",
            compose(rho, kron(_ident(x), b.eta)),
            coherence_map((1, 0), SMALL_PSI, [[x], []])))
    return make_report("module", entries)


def check_comodule(com: ComoduleInst) -> CheckReport:
    """Deformed coassociativity and counitality of a coaction."""
    x, b = com.carrier, com.over
    a = b.obj
    b.require("delta")
    rho = com.coaction
    entries = []
    for name in _shared_endo_names(x, a):
        ex, ea = x.endos()[name], a.endos()[name]
        entries.append(compare_entry(
            f"comodule/coaction-commutes-{name}",
            f"coaction intertwines the endomorphism {name}",
            compose(rho, ex), compose(kron(ex, ea), rho)))
    phi12 = coherence_map((1, 2), BIG_PHI, [[x], [a, a]])
    phi21 = coherence_map((2, 1), BIG_PHI, [[x, a], [a]])
    entries.append(compare_entry(
        "comodule/coassociativity",
        "coacting then comultiplying equals coacting twice",
        compose_all([phi12, kron(_ident(x), b.delta), rho]),
        compose_all([phi21, kron(rho, _ident(a)), rho])))
    if b.epsilon is not None:
        entries.append(compare_entry(
            "comodule/counitality",
            "coacting into the counit lands on the carrier's alpha",
            compose(kron(_ident(x), b.epsilon), rho),
            coherence_map((1, 0), SMALL_PHI, [[x], []])))
    return make_report("comodule", entries)


def check_hopf_module(mod: ModuleInst, com: ComoduleInst) -> CheckReport:
    """Module + comodule whose action and coaction interchange over mu, delta."""
    if mod.carrier != com.carrier or mod.over != com.over:
        raise MixedStructures("module and comodule disagree on carrier or structure")
    b = mod.over
    b.require("mu", "delta")
    x, a = mod.carrier, b.obj
    entries = list(check_module(mod).entries) + list(check_comodule(com).entries)
    xi = xi_map(2, 2, [[x, a], [a, a]])
    lhs = compose(com.coaction, mod.action)
    rhs = compose_all([kron(mod.action, b.mu), xi, kron(com.coaction, b.delta)])
    entries.append(compare_entry(
        "hopf-module/compatibility",
        "coaction of an action via the middle interchange", lhs, rhs))
    return make_report("hopf-module", entries)


def regular_module(b: StructureBundle) -> ModuleInst:
    b.require("mu")
    return ModuleInst(b.obj, b.mu, b)


def regular_comodule(b: StructureBundle) -> ComoduleInst:
    b.require("delta")
    return ComoduleInst(b.obj, b.delta, b)


def induced_module_action(mods: Sequence[ModuleInst],
                          over: Optional[StructureBundle] = None) -> ModuleInst:
    """Tensor product of modules with the comultiplication-spread action.

    All modules must live over the same bimonoid; the empty product is the
    unit carrier acted on through the counit.
    """
    mods = list(mods)
    if mods:
        over = mods[0].over
        if any(m.over != over for m in mods):
            raise MixedStructures("modules over different structures")
    elif over is None:
        raise MixedStructures("empty module list needs an explicit structure")
    report = check_bimonoid(over)
    if not report.passed:
        raise InvariantViolation(
            f"structure is not a bimonoid: {report.failures()[0].name}")

    a = over.obj
    field = a.field
    n = len(mods)
    carriers = [m.carrier for m in mods]
    product = nprod(carriers, field)
    dn = delta_n(over, n)
    xdim = math.prod(x.dim for x in carriers)
    spread = kron(DenseMap.identity(field, xdim), dn)
    xi = xi_map(2, n, [carriers, [a] * n], field)
    act = kron_all(field, [m.action for m in mods])
    return ModuleInst(product, compose_all([act, xi, spread]), over)
