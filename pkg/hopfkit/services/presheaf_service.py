"""
Presheaf service.
Set-valued presheaves over a finite poset: the cartesian closed structure
computed by hom-set enumeration, and the exponential monad (-)^a with its
idempotent subterminal case.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from hopfkit.config import settings
from hopfkit.errors import InconsistencyError, InputError
from hopfkit.models import AxiomCheck, AxiomReport
from hopfkit.services.finset_service import FinMap, all_maps, pair_map, product_map

logger = logging.getLogger(__name__)

# One component FinMap per poset element.
NatTrans = Tuple[FinMap, ...]


@dataclass(frozen=True)
class FinPoset:
    """A finite partial order; leq_table[p][q] says p <= q."""

    size: int
    leq_table: Tuple[Tuple[bool, ...], ...]

    def __post_init__(self):
        n = self.size
        if len(self.leq_table) != n or any(len(row) != n for row in self.leq_table):
            raise InputError(f"order table is not {n} x {n}")
        r = range(n)
        if not all(self.leq_table[p][p] for p in r):
            raise InputError("order is not reflexive")
        for p, q in itertools.product(r, r):
            if p != q and self.leq_table[p][q] and self.leq_table[q][p]:
                raise InputError(f"order is not antisymmetric at {p}, {q}")
        for p, q, s in itertools.product(r, r, r):
            if self.leq_table[p][q] and self.leq_table[q][s] and not self.leq_table[p][s]:
                raise InputError(f"order is not transitive at {p} <= {q} <= {s}")

    def leq(self, p: int, q: int) -> bool:
        return self.leq_table[p][q]

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[Sequence[int]]) -> "FinPoset":
        """Reflexive-transitive closure of the given [p, q] (p <= q) pairs."""
        table = [[p == q for q in range(size)] for p in range(size)]
        for pair in pairs:
            if len(pair) != 2 or not all(0 <= x < size for x in pair):
                raise InputError(f"order pair {list(pair)} is not a pair of elements below {size}")
            table[pair[0]][pair[1]] = True
        for k, p, q in itertools.product(range(size), repeat=3):
            if table[p][k] and table[k][q]:
                table[p][q] = True
        return cls(size, tuple(tuple(row) for row in table))

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        return cls(n, tuple(tuple(p <= q for q in range(n)) for p in range(n)))

    @classmethod
    def discrete(cls, n: int) -> "FinPoset":
        return cls(n, tuple(tuple(p == q for q in range(n)) for p in range(n)))

    def below(self, p: int) -> Tuple[int, ...]:
        return tuple(q for q in range(self.size) if self.leq(q, p))

    def covers(self) -> List[Tuple[int, int]]:
        """Pairs (q, p) with p < q and nothing strictly between."""
        out = []
        for p, q in itertools.product(range(self.size), repeat=2):
            if p == q or not self.leq(p, q):
                continue
            if not any(r not in (p, q) and self.leq(p, r) and self.leq(r, q) for r in range(self.size)):
                out.append((q, p))
        return sorted(out)

    def top_down(self) -> List[int]:
        """A linear extension listing every element before everything below it."""
        return sorted(range(self.size), key=lambda p: (-len(self.below(p)), p))

    def down_sets(self) -> List[FrozenSet[int]]:
        found = []
        for mask in range(1 << self.size):
            members = frozenset(p for p in range(self.size) if mask >> p & 1)
            if all(q in members for p in members for q in self.below(p)):
                found.append(members)
        return found


@dataclass(frozen=True)
class Presheaf:
    """
    A functor P^op -> FinSet. restrictions holds, for every p <= q, the map
    X(q) -> X(p) under the key (q, p), sorted by key.
    """

    poset: FinPoset
    sizes: Tuple[int, ...]
    restrictions: Tuple[Tuple[Tuple[int, int], FinMap], ...]

    @cached_property
    def _table(self) -> Dict[Tuple[int, int], FinMap]:
        return dict(self.restrictions)

    def res(self, q: int, p: int) -> FinMap:
        return self._table[(q, p)]

    def is_empty(self) -> bool:
        return all(s == 0 for s in self.sizes)

    def to_text(self) -> str:
        """Sizes per element, then restriction tables along the covers."""
        lines = [f"sizes: {list(self.sizes)}"]
        for q, p in self.poset.covers():
            lines.append(f"{q}->{p}: {list(self.res(q, p).table)}")
        return "\n".join(lines)


def make_presheaf(poset: FinPoset, sizes: Sequence[int], maps: Dict[Tuple[int, int], FinMap]) -> Presheaf:
    """
    Assemble a presheaf from restrictions for every strict pair, adding
    identities, and check functoriality.

    Raises:
        InputError: if a restriction is missing, misshapen or the composites disagree
    """
    n = poset.size
    if len(sizes) != n:
        raise InputError(f"presheaf needs {n} component sizes, got {len(sizes)}")
    full = {}
    for p, q in itertools.product(range(n), repeat=2):
        if not poset.leq(p, q):
            continue
        if p == q:
            full[(q, p)] = FinMap.identity(sizes[p])
            continue
        if (q, p) not in maps:
            raise InputError(f"missing restriction {q} -> {p}")
        f = maps[(q, p)]
        if (f.source_size, f.target_size) != (sizes[q], sizes[p]):
            raise InputError(f"restriction {q} -> {p} has the wrong shape")
        full[(q, p)] = f
    for p, q, r in itertools.product(range(n), repeat=3):
        if poset.leq(p, q) and poset.leq(q, r) and full[(r, p)] != full[(q, p)].after(full[(r, q)]):
            raise InputError(f"restrictions {r} -> {q} -> {p} do not compose")
    return Presheaf(poset, tuple(sizes), tuple(sorted(full.items())))


def compose(g: NatTrans, f: NatTrans) -> NatTrans:
    return tuple(gp.after(fp) for gp, fp in zip(g, f))


def identity_nt(X: Presheaf) -> NatTrans:
    return tuple(FinMap.identity(s) for s in X.sizes)


def pair_nt(f: NatTrans, g: NatTrans) -> NatTrans:
    return tuple(pair_map(fp, gp) for fp, gp in zip(f, g))


def is_iso(f: NatTrans) -> bool:
    return all(fp.is_bijective() for fp in f)


def is_natural(X: Presheaf, Y: Presheaf, f: NatTrans) -> bool:
    n = X.poset.size
    return all(
        f[p].after(X.res(q, p)) == Y.res(q, p).after(f[q])
        for p, q in itertools.product(range(n), repeat=2)
        if X.poset.leq(p, q)
    )


@dataclass(frozen=True)
class Exponential:
    """Y^X with (Y^X)(p) = Hom(y(p) x X, Y); points[p] lists that hom-set."""

    source: Presheaf
    target: Presheaf
    presheaf: Presheaf
    points: Tuple[Tuple[NatTrans, ...], ...]

    @cached_property
    def index(self) -> Tuple[Dict[NatTrans, int], ...]:
        return tuple({beta: i for i, beta in enumerate(pts)} for pts in self.points)

    def locate(self, p: int, beta: NatTrans) -> int:
        try:
            return self.index[p][beta]
        except KeyError:
            raise InconsistencyError(f"transformation is not a point of the exponential at {p}") from None


class PresheafEngine:
    """
    Finite cartesian closed structure on presheaves over one poset.

    Args:
        poset: the index poset
        max_component: bound on component sizes for inventory()
    """

    def __init__(self, poset: FinPoset, max_component: Optional[int] = None):
        if poset.size > settings.MAX_POSET_SIZE:
            raise InputError(f"poset of size {poset.size} exceeds MAX_POSET_SIZE={settings.MAX_POSET_SIZE}")
        self.poset = poset
        self.max_component = settings.MAX_PRESHEAF_COMPONENT if max_component is None else max_component
        self._exponentials: Dict[Tuple[Presheaf, Presheaf], Exponential] = {}

    def constant(self, size: int) -> Presheaf:
        n = self.poset.size
        maps = {(q, p): FinMap.identity(size) for p, q in itertools.product(range(n), repeat=2)
                if p != q and self.poset.leq(p, q)}
        return make_presheaf(self.poset, (size,) * n, maps)

    def terminal(self) -> Presheaf:
        return self.constant(1)

    def initial(self) -> Presheaf:
        return self.constant(0)

    def product(self, X: Presheaf, Y: Presheaf) -> Presheaf:
        n = self.poset.size
        maps = {(q, p): product_map(X.res(q, p), Y.res(q, p)) for p, q in itertools.product(range(n), repeat=2)
                if p != q and self.poset.leq(p, q)}
        return make_presheaf(self.poset, tuple(a * b for a, b in zip(X.sizes, Y.sizes)), maps)

    def representable(self, p: int) -> Presheaf:
        return self.subterminal(frozenset(self.poset.below(p)))

    def subterminal(self, down_set: FrozenSet[int]) -> Presheaf:
        """The subobject of 1 that is {*} on a down-set and empty elsewhere."""
        n = self.poset.size
        if any(q not in down_set for p in down_set for q in self.poset.below(p)):
            raise InputError(f"{sorted(down_set)} is not a down-set")
        sizes = tuple(1 if p in down_set else 0 for p in range(n))
        maps = {(q, p): FinMap(sizes[q], sizes[p], (0,) * sizes[q]) for p, q in itertools.product(range(n), repeat=2)
                if p != q and self.poset.leq(p, q)}
        return make_presheaf(self.poset, sizes, maps)

    def subterminals(self) -> List[Presheaf]:
        return [self.subterminal(d) for d in self.poset.down_sets()]

    def is_subterminal(self, u: Presheaf) -> bool:
        """u x u = u through the diagonal."""
        diagonal = pair_nt(identity_nt(u), identity_nt(u))
        return is_iso(diagonal)

    def to_terminal(self, X: Presheaf) -> NatTrans:
        return tuple(FinMap.to_terminal(s) for s in X.sizes)

    def homs(self, X: Presheaf, Y: Presheaf) -> List[NatTrans]:
        """
        All natural transformations X -> Y. Components are chosen from the top
        of the poset down; values already implied by an assigned component
        above are forced.
        """
        order = self.poset.top_down()
        n = self.poset.size
        found: List[NatTrans] = []
        assigned: Dict[int, FinMap] = {}

        def extend(i: int):
            if i == len(order):
                found.append(tuple(assigned[p] for p in range(n)))
                return
            p = order[i]
            forced: Dict[int, int] = {}
            for q, alpha_q in assigned.items():
                if not self.poset.leq(p, q):
                    continue
                rx, ry = X.res(q, p), Y.res(q, p)
                for x in range(X.sizes[q]):
                    value = ry(alpha_q(x))
                    if forced.setdefault(rx(x), value) != value:
                        return
            free = [x for x in range(X.sizes[p]) if x not in forced]
            for values in itertools.product(range(Y.sizes[p]), repeat=len(free)):
                table = dict(forced)
                table.update(zip(free, values))
                assigned[p] = FinMap(X.sizes[p], Y.sizes[p], tuple(table[x] for x in range(X.sizes[p])))
                extend(i + 1)
            assigned.pop(p, None)

        extend(0)
        return found

    def _restrict_point(self, beta: NatTrans, target: Presheaf, q: int) -> NatTrans:
        return tuple(
            beta[r] if self.poset.leq(r, q) else FinMap(0, target.sizes[r], ())
            for r in range(self.poset.size)
        )

    def exponential(self, X: Presheaf, Y: Presheaf) -> Exponential:
        key = (X, Y)
        if key in self._exponentials:
            return self._exponentials[key]
        n = self.poset.size
        points = tuple(tuple(self.homs(self.product(self.representable(p), X), Y)) for p in range(n))
        index = [{beta: i for i, beta in enumerate(pts)} for pts in points]
        maps = {}
        for q, p in itertools.product(range(n), repeat=2):
            if q != p and self.poset.leq(q, p):
                maps[(p, q)] = FinMap(len(points[p]), len(points[q]),
                                      tuple(index[q][self._restrict_point(beta, Y, q)] for beta in points[p]))
        presheaf = make_presheaf(self.poset, tuple(len(pts) for pts in points), maps)
        logger.debug("exponential sizes %s", presheaf.sizes)
        result = Exponential(X, Y, presheaf, points)
        if len(self._exponentials) >= settings.EXPONENTIAL_CACHE_LIMIT:
            self._exponentials.pop(next(iter(self._exponentials)))
        self._exponentials[key] = result
        return result

    def evaluation(self, X: Presheaf, Y: Presheaf) -> NatTrans:
        """ev: Y^X x X -> Y."""
        E = self.exponential(X, Y)
        return tuple(
            FinMap(E.presheaf.sizes[p] * X.sizes[p], Y.sizes[p],
                   tuple(E.points[p][e][p](x) for e in range(E.presheaf.sizes[p]) for x in range(X.sizes[p])))
            for p in range(self.poset.size)
        )

    def curry(self, Z: Presheaf, X: Presheaf, Y: Presheaf, f: NatTrans) -> NatTrans:
        """Z x X -> Y  to  Z -> Y^X."""
        E = self.exponential(X, Y)
        n = self.poset.size
        comps = []
        for p in range(n):
            table = []
            for z in range(Z.sizes[p]):
                beta = tuple(
                    FinMap(X.sizes[r], Y.sizes[r],
                           tuple(f[r](Z.res(p, r)(z) * X.sizes[r] + x) for x in range(X.sizes[r])))
                    if self.poset.leq(r, p) else FinMap(0, Y.sizes[r], ())
                    for r in range(n)
                )
                table.append(E.locate(p, beta))
            comps.append(FinMap(Z.sizes[p], E.presheaf.sizes[p], tuple(table)))
        return tuple(comps)

    def uncurry(self, Z: Presheaf, X: Presheaf, Y: Presheaf, g: NatTrans) -> NatTrans:
        """Z -> Y^X  to  Z x X -> Y."""
        E = self.exponential(X, Y)
        return tuple(
            FinMap(Z.sizes[p] * X.sizes[p], Y.sizes[p],
                   tuple(E.points[p][g[p](z)][p](x) for z in range(Z.sizes[p]) for x in range(X.sizes[p])))
            for p in range(self.poset.size)
        )

    def inventory(self, max_component: Optional[int] = None) -> List[Presheaf]:
        """
        Every presheaf with components of size <= max_component, built from
        maps along covering pairs and kept when all paths agree.
        """
        bound = self.max_component if max_component is None else max_component
        n = self.poset.size
        covers = self.poset.covers()
        found = []
        for sizes in itertools.product(range(bound + 1), repeat=n):
            choices = [list(all_maps(sizes[q], sizes[p])) for q, p in covers]
            for picked in itertools.product(*choices):
                cover_maps = dict(zip(covers, picked))
                maps = self._close_covers(sizes, cover_maps)
                if maps is None:
                    continue
                found.append(make_presheaf(self.poset, sizes, maps))
        logger.debug("inventory of %d presheaves with components <= %d", len(found), bound)
        return found

    def _close_covers(self, sizes, cover_maps) -> Optional[Dict[Tuple[int, int], FinMap]]:
        memo: Dict[Tuple[int, int], Optional[FinMap]] = {}

        def path(q: int, p: int) -> Optional[FinMap]:
            if (q, p) in memo:
                return memo[(q, p)]
            if q == p:
                return FinMap.identity(sizes[p])
            result = None
            for (top, c), f in cover_maps.items():
                if top != q or not self.poset.leq(p, c):
                    continue
                rest = path(c, p)
                if rest is None:
                    memo[(q, p)] = None
                    return None
                candidate = rest.after(f)
                if result is not None and candidate != result:
                    memo[(q, p)] = None
                    return None
                result = candidate
            memo[(q, p)] = result
            return result

        maps = {}
        for p, q in itertools.product(range(self.poset.size), repeat=2):
            if p != q and self.poset.leq(p, q):
                f = path(q, p)
                if f is None:
                    return None
                maps[(q, p)] = f
        return maps

    def adjunction_check(self, inventory: Sequence[Presheaf]) -> AxiomReport:
        """
        Hom(Z x X, Y) and Hom(Z, Y^X) are in bijection through curry, with
        uncurry as inverse, for every triple drawn from the inventory.
        """
        report = AxiomReport(subject="exponential adjunction")
        witness = None
        triples = 0
        for Z, X, Y in itertools.product(inventory, repeat=3):
            triples += 1
            lhs = self.homs(self.product(Z, X), Y)
            rhs = self.homs(Z, self.exponential(X, Y).presheaf)
            curried = [self.curry(Z, X, Y, f) for f in lhs]
            if len(lhs) != len(rhs) or len(set(curried)) != len(rhs) or not set(curried) <= set(rhs):
                witness = f"Z={Z.sizes}, X={X.sizes}, Y={Y.sizes}: {len(lhs)} vs {len(rhs)}"
                break
            if any(self.uncurry(Z, X, Y, g) != f for f, g in zip(lhs, curried)):
                witness = f"Z={Z.sizes}, X={X.sizes}, Y={Y.sizes}: uncurry does not invert curry"
                break
        report.checks.append(AxiomCheck(name=f"curry_bijective[{triples} triples]", passed=witness is None,
                                        witness=witness))
        return report


class ExponentialMonad:
    """
    T_a = (-)^a on presheaves, with e_X = X^{!_a} and m_X = X^{Delta_a}.

    Components are computed on demand for any presheaf; the law checks run
    over a supplied inventory.
    """

    def __init__(self, engine: PresheafEngine, a: Presheaf):
        self.engine = engine
        self.a = a
        self.name = "T_a"

    def apply(self, X: Presheaf) -> Presheaf:
        return self.engine.exponential(self.a, X).presheaf

    def unit(self, X: Presheaf) -> NatTrans:
        E = self.engine.exponential(self.a, X)
        poset = self.engine.poset
        comps = []
        for p in range(poset.size):
            table = []
            for x in range(X.sizes[p]):
                beta = tuple(
                    FinMap(self.a.sizes[r], X.sizes[r], (X.res(p, r)(x),) * self.a.sizes[r])
                    if poset.leq(r, p) else FinMap(0, X.sizes[r], ())
                    for r in range(poset.size)
                )
                table.append(E.locate(p, beta))
            comps.append(FinMap(X.sizes[p], E.presheaf.sizes[p], tuple(table)))
        return tuple(comps)

    def mult(self, X: Presheaf) -> NatTrans:
        inner = self.engine.exponential(self.a, X)
        outer = self.engine.exponential(self.a, inner.presheaf)
        poset = self.engine.poset
        comps = []
        for p in range(poset.size):
            table = []
            for beta in outer.points[p]:
                gamma = tuple(
                    FinMap(self.a.sizes[r], X.sizes[r],
                           tuple(inner.points[r][beta[r](t)][r](t) for t in range(self.a.sizes[r])))
                    if poset.leq(r, p) else FinMap(0, X.sizes[r], ())
                    for r in range(poset.size)
                )
                table.append(inner.locate(p, gamma))
            comps.append(FinMap(outer.presheaf.sizes[p], inner.presheaf.sizes[p], tuple(table)))
        return tuple(comps)

    def fmap(self, X: Presheaf, Y: Presheaf, f: NatTrans) -> NatTrans:
        source = self.engine.exponential(self.a, X)
        target = self.engine.exponential(self.a, Y)
        comps = []
        for p in range(self.engine.poset.size):
            table = tuple(target.locate(p, compose(f, beta)) for beta in source.points[p])
            comps.append(FinMap(source.presheaf.sizes[p], target.presheaf.sizes[p], table))
        return tuple(comps)

    def monad_laws(self, inventory: Sequence[Presheaf]) -> AxiomReport:
        report = AxiomReport(subject="monad laws of T_a")
        for name in ("left_unit", "right_unit", "assoc"):
            report.checks.append(AxiomCheck(name=name, passed=True))
        for X in inventory:
            TX = self.apply(X)
            m = self.mult(X)
            ident = identity_nt(TX)
            results = {
                "left_unit": compose(m, self.unit(TX)) == ident,
                "right_unit": compose(m, self.fmap(X, TX, self.unit(X))) == ident,
                "assoc": compose(m, self.fmap(self.apply(TX), TX, m)) == compose(m, self.mult(TX)),
            }
            for name, ok in results.items():
                check = report.get(name)
                if check.passed and not ok:
                    check.passed = False
                    check.witness = f"X with sizes {X.sizes}"
        return report

    def is_idempotent(self, inventory: Sequence[Presheaf]) -> bool:
        return all(is_iso(self.mult(X)) for X in inventory)

    def preserves_terminal(self) -> bool:
        return all(s == 1 for s in self.apply(self.engine.terminal()).sizes)

    def unit_submonad_is_total(self, inventory: Optional[Sequence[Presheaf]] = None) -> bool:
        """Every t in T(X) satisfies T(!)(t) = e_1(*) on the inventory."""
        inventory = self.engine.inventory() if inventory is None else inventory
        one = self.engine.terminal()
        e1 = self.unit(one)
        for X in inventory:
            tf = self.fmap(X, one, self.engine.to_terminal(X))
            for p in range(self.engine.poset.size):
                if any(tf[p](t) != e1[p](0) for t in range(tf[p].source_size)):
                    return False
        return True

    def algebras(self, inventory: Sequence[Presheaf]) -> List[Tuple[Presheaf, NatTrans]]:
        found = []
        for X in inventory:
            TX = self.apply(X)
            e, m = self.unit(X), self.mult(X)
            for h in self.engine.homs(TX, X):
                if compose(h, e) == identity_nt(X) and compose(h, m) == compose(h, self.fmap(TX, X, h)):
                    found.append((X, h))
        return found

    def right_prehopf_component(self, X: Presheaf, h: NatTrans) -> NatTrans:
        """<h, T(!)>: T(X) -> X x T(1)."""
        return pair_nt(h, self.fmap(X, self.engine.terminal(), self.engine.to_terminal(X)))


@dataclass(frozen=True)
class ExponentialMonadReport:
    laws: AxiomReport
    diagonal_iso: bool
    idempotent: bool
    terminal_fixed: bool
    unit_submonad_total: bool
    algebra_count: int
    right_prehopf: bool


def exponential_monad(engine: PresheafEngine, a: Presheaf) -> ExponentialMonad:
    return ExponentialMonad(engine, a)


def exponential_monad_Tu(engine: PresheafEngine, u: Presheaf) -> ExponentialMonad:
    """
    Raises:
        InputError: if u is not subterminal
    """
    if not engine.is_subterminal(u):
        raise InputError(f"presheaf with sizes {u.sizes} is not subterminal")
    monad = ExponentialMonad(engine, u)
    monad.name = "T_u"
    return monad


def check_exponential_monad(monad: ExponentialMonad, inventory: Sequence[Presheaf]) -> ExponentialMonadReport:
    """
    Laws, idempotence, T(1) = 1 and right pre-Hopf components of T_u on an
    inventory, with the terminal-object lemma asserted both ways.

    Raises:
        InconsistencyError: if terminal preservation and totality of the unit submonad disagree
    """
    engine = monad.engine
    laws = monad.monad_laws(inventory)
    terminal_fixed = monad.preserves_terminal()
    total = monad.unit_submonad_is_total(inventory)
    if terminal_fixed != total:
        raise InconsistencyError(f"T(1) = 1 is {terminal_fixed} but the unit submonad total is {total}")
    algebras = monad.algebras(inventory)
    right_prehopf = all(is_iso(monad.right_prehopf_component(X, h)) for X, h in algebras)
    logger.info("%s: %d algebras on %d presheaves", monad.name, len(algebras), len(inventory))
    return ExponentialMonadReport(
        laws=laws,
        diagonal_iso=engine.is_subterminal(monad.a),
        idempotent=monad.is_idempotent(inventory),
        terminal_fixed=terminal_fixed,
        unit_submonad_total=total,
        algebra_count=len(algebras),
        right_prehopf=right_prehopf,
    )


@dataclass(frozen=True)
class NonEquivalenceWitness:
    found: bool
    hom_a_b: int
    hom_a_tb: int
    note: str


def non_equivalence_witness_Tu(engine: PresheafEngine, u: Presheaf) -> NonEquivalenceWitness:
    """Compare |Hom(1, u)| with |Hom(1, T_u(u))|."""
    one = engine.terminal()
    if u == one:
        return NonEquivalenceWitness(False, 1, 1, "no witness (u trivial)")
    monad = exponential_monad_Tu(engine, u)
    hom_ab = len(engine.homs(one, u))
    hom_atb = len(engine.homs(one, monad.apply(u)))
    note = "a = 1, b = u"
    if u.is_empty():
        note += "; u is initial, so T_u sends every presheaf to 1"
    return NonEquivalenceWitness(hom_ab != hom_atb, hom_ab, hom_atb, note)


def default_subterminal(engine: PresheafEngine) -> Presheaf:
    """The first down-set that is neither empty nor everything, else 1."""
    everything = frozenset(range(engine.poset.size))
    for down_set in engine.poset.down_sets():
        if down_set and down_set != everything:
            return engine.subterminal(down_set)
    return engine.terminal()


class PresheafService:
    """Exponentials and the monads (-)^u on the presheaves of one poset."""

    def __init__(self, engine: PresheafEngine):
        self.engine = engine

    def inventory(self) -> List[Presheaf]:
        return self.engine.inventory()

    def subterminal(self, down_set: Optional[Iterable[int]] = None) -> Presheaf:
        """The subterminal on a down-set, or the default one when none is given."""
        if down_set is None:
            return default_subterminal(self.engine)
        return self.engine.subterminal(frozenset(down_set))

    def adjunction(self, inventory: Sequence[Presheaf]) -> AxiomReport:
        return self.engine.adjunction_check(inventory)

    def monad(self, u: Presheaf) -> ExponentialMonad:
        return exponential_monad_Tu(self.engine, u)

    def check(self, monad: ExponentialMonad, inventory: Sequence[Presheaf]) -> ExponentialMonadReport:
        return check_exponential_monad(monad, inventory)

    def non_equivalence(self, u: Presheaf) -> NonEquivalenceWitness:
        return non_equivalence_witness_Tu(self.engine, u)
