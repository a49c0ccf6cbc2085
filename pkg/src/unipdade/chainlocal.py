"""e-chains up to conjugacy and the local character counts attached to them.

A chain G = L_0 > L_1 > ... > L_n is stored as a rooted tree.  Depth i holds
the factors of L_i: one core node plus torus nodes (GL_a(q^k), GU_a(q^k)).
Each node's children are the factors of L_{i+1} inside it.  Children are
kept sorted, so isomorphic trees compare equal and the tree itself is the
canonical form of the G-class of the chain.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, gcd

from .cycpoly import CycProduct
from .genre import (GroupDescriptor, LeviClass, center_modulus, core_folds, core_options,
                    factor_kind, order_polynomial, torus_modulus, twist_multiplier,
                    twist_order, unit)
from .groups import WreathElement, wreath_subgroup_degrees
from .labelcomb import Partition, Symbol, e_cores_of_size, partitions, symbol_core, symbols_of_rank
from .uniphc import BlockId, CountTable, check_ell, degree_polynomial, hook_kind


class ChainError(ValueError):
    pass


# ---------------------------------------------------------------- trees

@dataclass(frozen=True)
class Node:
    kind: str  # "core" or "torus"
    size: int
    children: tuple["Node", ...] = ()

    @property
    def key(self) -> tuple:
        return (0 if self.kind == "core" else 1, self.size, tuple(c.key for c in self.children))

    def __lt__(self, other: "Node") -> bool:
        return self.key < other.key


def make_node(kind: str, size: int, children=()) -> Node:
    children = list(children)
    core = [c for c in children if c.kind == "core"]
    torus = sorted((c for c in children if c.kind == "torus"), key=lambda c: c.key, reverse=True)
    return Node(kind, size, tuple(core + torus))


def _level(node: Node, depth: int) -> list[Node]:
    if depth == 0:
        return [node]
    return [x for c in node.children for x in _level(c, depth - 1)]


def _depth(node: Node) -> int:
    return 0 if not node.children else 1 + _depth(node.children[0])


@dataclass(frozen=True)
class EChain:
    G: GroupDescriptor
    e: int
    root: Node

    @property
    def length(self) -> int:
        return _depth(self.root)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def level(self, i: int) -> list[Node]:
        return _level(self.root, i)

    def levi(self, i: int) -> LeviClass:
        nodes = self.level(i)
        core = sum(n.size for n in nodes if n.kind == "core")
        tori = tuple(n.size for n in nodes if n.kind == "torus")
        return LeviClass(core, tori, factor_kind(self.G, self.e), self.e)

    def levis(self) -> list[LeviClass]:
        return [self.levi(i) for i in range(self.length + 1)]

    @property
    def last(self) -> LeviClass:
        return self.levi(self.length)

    @property
    def stabilizer_poly(self) -> CycProduct:
        return order_polynomial(self.G, self.last)

    @property
    def stabilizer_wreath_order(self) -> int:
        """|W_sigma| = |G_sigma : L(sigma)|."""
        c = twist_order(self.G, self.e)
        return _aut_order(self.root) * c ** _torus_roots(self.root)

    def truncate(self) -> "EChain":
        """sigma minus its last term."""
        if self.length == 0:
            raise ChainError("cannot shorten the trivial chain")
        return EChain(self.G, self.e, _truncate(self.root, self.length - 1))

    def render(self) -> str:
        parts = ["G"] + [self.levi(i).short(self.G) for i in range(1, self.length + 1)]
        return " > ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {"chain": self.render(), "length": self.length, "tree": _node_json(self.root),
                "stabilizer_poly": str(self.stabilizer_poly),
                "stabilizer_wreath_order": self.stabilizer_wreath_order}


def _node_json(node: Node) -> dict:
    return {"kind": node.kind, "size": node.size, "children": [_node_json(c) for c in node.children]}


def _truncate(node: Node, depth: int) -> Node:
    if depth == 0:
        return Node(node.kind, node.size)
    return make_node(node.kind, node.size, [_truncate(c, depth - 1) for c in node.children])


def _aut_order(node: Node) -> int:
    out = 1
    for child, mult in Counter(node.children).items():
        out *= _aut_order(child) ** mult * factorial(mult)
    return out


def _torus_roots(node: Node) -> int:
    if node.kind == "torus":
        return 0
    return sum(1 if c.kind == "torus" else _torus_roots(c) for c in node.children)


def trivial_chain(G: GroupDescriptor, e: int) -> EChain:
    return EChain(G, e, Node("core", G.rank))


def _leaf_options(G: GroupDescriptor, e: int, leaf: Node, is_root: bool) -> list[tuple[Node, ...]]:
    if leaf.kind == "core":
        out = []
        for m2, fresh in core_options(G, e, leaf.size, is_root):
            out.append((Node("core", m2),) + tuple(Node("torus", a) for a in fresh))
        return out
    return [tuple(Node("torus", b) for b in p) for p in partitions(leaf.size)]


def _is_trivial_option(leaf: Node, kids: tuple[Node, ...]) -> bool:
    return len(kids) == 1 and kids[0].size == leaf.size


def _grow(node: Node, depth: int, assign) -> Node:
    if depth == 0:
        return make_node(node.kind, node.size, assign[id(node)])
    return make_node(node.kind, node.size, [_grow(c, depth - 1, assign) for c in node.children])


def extensions(chain: EChain) -> list[EChain]:
    """All chains sigma + L with L a proper e-split Levi of L(sigma), up to conjugacy."""
    k = chain.length
    leaves = chain.level(k)
    opts = [_leaf_options(chain.G, chain.e, leaf, k == 0) for leaf in leaves]
    seen = {}
    for choice in product(*opts):
        if all(_is_trivial_option(leaf, kids) for leaf, kids in zip(leaves, choice)):
            continue
        assign = {id(leaf): kids for leaf, kids in zip(leaves, choice)}
        root = _grow(chain.root, k, assign)
        seen.setdefault(root.key, root)
    return [EChain(chain.G, chain.e, seen[key]) for key in sorted(seen)]


def enumerate_chains(G: GroupDescriptor, e: int, max_len: int | None = None) -> list[EChain]:
    """One chain per G-class, the trivial chain first, then by length."""
    out = [trivial_chain(G, e)]
    frontier = list(out)
    while frontier and (max_len is None or frontier[0].length < max_len):
        nxt = {}
        for ch in frontier:
            for ext in extensions(ch):
                nxt.setdefault(ext.root.key, ext)
        frontier = [nxt[k] for k in sorted(nxt)]
        out.extend(frontier)
    return out


def census_by_length(chains: list[EChain]) -> dict[int, int]:
    return dict(sorted(Counter(c.length for c in chains).items()))


# ---------------------------------------------------------------- cuspidal pairs

def _label_key(label) -> str:
    return str(label)


def core_labels(G: GroupDescriptor, e: int, r: int) -> list:
    """e-cuspidal unipotent labels of the rank-r core group."""
    k, kind = hook_kind(G, e)
    if G.is_linear:
        return e_cores_of_size(r, k)
    return [s for s in symbols_of_rank(r) if symbol_core(s, k, kind)[1] == 0]


def _core_leaf(chain: EChain) -> Node:
    return next(n for n in chain.level(chain.length) if n.kind == "core")


def cp(chain: EChain) -> list:
    """Core labels gamma giving the cuspidal pairs (M, mu) of L(sigma) with M < G."""
    G, e = chain.G, chain.e
    m = _core_leaf(chain).size
    k = unit(G, e)
    if core_folds(G, e):
        ranks = [0] if (m == 0 or G.rank > 1) else [m]
    else:
        ranks = list(range(m % k, m + 1, k))
    out = []
    for r in ranks:
        for lab in core_labels(G, e, r):
            if chain.length == 0 and r == G.rank:
                continue  # M = G is excluded
            out.append(lab)
    return out


def cuspidal_levi(chain: EChain, gamma) -> LeviClass:
    G, e = chain.G, chain.e
    r = Partition(gamma).size if G.is_linear else gamma.rank
    k = unit(G, e)
    leaves = chain.level(chain.length)
    core = _core_leaf(chain)
    fresh = (core.size - r) // k
    ones = fresh + sum(n.size for n in leaves if n.kind == "torus")
    return LeviClass(r, (1,) * ones, factor_kind(G, e), e)


def m_is_last(chain: EChain, gamma) -> bool:
    return cuspidal_levi(chain, gamma) == chain.last


def plus_m(chain: EChain, gamma) -> EChain:
    """sigma + M for M < L(sigma)."""
    if m_is_last(chain, gamma):
        raise ChainError("M equals L(sigma); sigma + M = sigma")
    G, e = chain.G, chain.e
    r = Partition(gamma).size if G.is_linear else gamma.rank
    k = unit(G, e)
    depth = chain.length
    assign = {}
    for leaf in chain.level(depth):
        if leaf.kind == "core":
            assign[id(leaf)] = (Node("core", r),) + (Node("torus", 1),) * ((leaf.size - r) // k)
        else:
            assign[id(leaf)] = (Node("torus", 1),) * leaf.size
    return EChain(G, e, _grow(chain.root, depth, assign))


def delta(chain: EChain, gamma) -> EChain:
    """The pairing (sigma, M, mu) -> (sigma +- M, M, mu)."""
    if chain.length == 0 and m_is_last(chain, gamma):
        raise ChainError("M = G is not a cuspidal pair of CP(sigma)")
    if m_is_last(chain, gamma):
        return chain.truncate()
    return plus_m(chain, gamma)


def closing_chain(chain: EChain, gamma) -> EChain:
    """The chain ending at M: sigma itself if L(sigma) = M, else sigma + M."""
    return chain if m_is_last(chain, gamma) else plus_m(chain, gamma)


# ---------------------------------------------------------------- stabilizers

def _leaf_paths(node: Node, path=()) -> list[tuple[int, ...]]:
    if not node.children:
        return [path]
    return [p for i, c in enumerate(node.children) for p in _leaf_paths(c, path + (i,))]


def _positions(tau: EChain) -> list[tuple[int, ...]]:
    """Paths of the size-1 torus leaves of tau (the torus factors of M)."""
    out = []
    for path in _leaf_paths(tau.root):
        node = tau.root
        for i in path:
            node = node.children[i]
        if node.kind == "torus":
            out.append(path)
    return out


def _node_at(root: Node, path) -> Node:
    node = root
    for i in path:
        node = node.children[i]
    return node


def _root_prefix(root: Node, path) -> tuple[int, ...]:
    """Prefix of path ending at the torus root above the leaf."""
    node = root
    for j, i in enumerate(path):
        node = node.children[i]
        if node.kind == "torus":
            return tuple(path[: j + 1])
    raise ChainError("leaf is not under a torus node")


def chain_stabilizer(tau: EChain) -> list[WreathElement]:
    """N_G(tau)/M as a subgroup of Z_c wr S_w acting on the torus factors of M."""
    pos = _positions(tau)
    index = {p: i for i, p in enumerate(pos)}
    w = len(pos)
    c = twist_order(tau.G, tau.e)
    gens = []
    roots = sorted({_root_prefix(tau.root, p) for p in pos})
    for r in roots:
        tw = tuple(1 if p[: len(r)] == r else 0 for p in pos)
        gens.append(WreathElement(tuple(range(w)), tw, c))

    def walk(node: Node, path):
        for i in range(len(node.children) - 1):
            if node.children[i] == node.children[i + 1]:
                a, b = path + (i,), path + (i + 1,)
                perm = list(range(w))
                la = [p for p in pos if p[: len(a)] == a]
                lb = [p for p in pos if p[: len(b)] == b]
                for x, y in zip(la, lb):
                    perm[index[x]], perm[index[y]] = index[y], index[x]
                gens.append(WreathElement(tuple(perm), (0,) * w, c))
        for i, ch in enumerate(node.children):
            walk(ch, path + (i,))

    walk(tau.root, ())
    ident = WreathElement.identity(w, c)
    group = {ident}
    todo = deque([ident])
    while todo:
        g = todo.popleft()
        for s in gens:
            h = s * g
            if h not in group:
                group.add(h)
                todo.append(h)
    return sorted(group, key=lambda g: (g.perm, g.twist))


# ---------------------------------------------------------------- central data

@dataclass(frozen=True)
class CentralSetup:
    """Z(K*)^F for the penultimate Levi K of tau, as exponent tuples."""
    has_core: bool
    core_size: int
    torus_sizes: tuple[int, ...]
    node_positions: tuple[tuple[int, ...], ...]  # positions under each K torus node
    N: int
    N0: int
    u: int
    c: int
    reduce_center: bool

    def canon(self, z: tuple[int, ...]) -> tuple[int, ...]:
        if not self.reduce_center or self.N0 <= 1:
            return z
        step = self.N // self.N0
        if self.has_core:
            s = z[0]
            return (0,) + tuple((x - s * step) % self.N for x in z[1:])
        if not z:
            return z
        return min(tuple((x + s * step) % self.N for x in z) for s in range(self.N0))

    def elements(self) -> list[tuple[int, ...]]:
        t = len(self.torus_sizes)
        if self.has_core:
            cores = [0] if (self.reduce_center and self.N0 > 1) else range(self.N0)
            raw = [(a,) + rest for a in cores for rest in product(range(self.N), repeat=t)]
        else:
            raw = list(product(range(self.N), repeat=t))
        return sorted({self.canon(z) for z in raw})

    def act(self, g: WreathElement, z: tuple[int, ...], pos_target) -> tuple[int, ...]:
        off = 1 if self.has_core else 0
        out = list(z)
        for j, ps in enumerate(self.node_positions):
            p = ps[0]
            tgt = pos_target[g.perm[p]]
            out[off + tgt] = z[off + j] * pow(self.u, g.twist[p], self.N) % self.N
        return self.canon(tuple(out))

    def eigenvalues(self, z: tuple[int, ...], G: GroupDescriptor) -> list[Fraction]:
        vals: list[Fraction] = []
        off = 0
        if G.is_linear:
            if self.has_core:
                vals += [Fraction(z[0], self.N0)] * self.core_size
                off = 1
        else:
            vals += [Fraction(0)] * (2 * self.core_size + 1)
        for j, a in enumerate(self.torus_sizes):
            orbit = [Fraction(z[off + j] * pow(self.u, i, self.N) % self.N, self.N) for i in range(self.c)]
            vals += orbit * a
        return vals


def central_setup(tau: EChain, q: int, reduce_center: bool = True) -> CentralSetup:
    G, e = tau.G, tau.e
    if tau.length == 0:
        raise ChainError("closing chain must have positive length")
    k_nodes = tau.level(tau.length - 1)
    pos = _positions(tau)
    index = {p: i for i, p in enumerate(pos)}
    k_paths = _level_paths(tau.root, tau.length - 1)
    core = [n for n in k_nodes if n.kind == "core"]
    core_size = core[0].size if core else 0
    torus_paths = [p for p, n in k_paths if n.kind == "torus"]
    node_positions = tuple(tuple(index[x] for x in pos if x[: len(p)] == p) for p in torus_paths)
    c = twist_order(G, e)
    return CentralSetup(
        has_core=G.is_linear and core_size > 0,
        core_size=core_size,
        torus_sizes=tuple(_node_at(tau.root, p).size for p in torus_paths),
        node_positions=node_positions,
        N=torus_modulus(G, e, q),
        N0=center_modulus(G, q),
        u=twist_multiplier(G, e, q),
        c=c,
        reduce_center=reduce_center,
    )


def _level_paths(node: Node, depth: int, path=()) -> list[tuple[tuple[int, ...], Node]]:
    if depth == 0:
        return [(path, node)]
    return [x for i, ch in enumerate(node.children) for x in _level_paths(ch, depth - 1, path + (i,))]


def _ell_prime_part(x: Fraction, ell: int) -> Fraction:
    b = x.denominator
    bl = 1
    while b % ell == 0:
        b //= ell
        bl *= ell
    if b == 1:
        return Fraction(0)
    alpha = pow(bl, -1, b)
    y = x * alpha * bl
    return y - (y.numerator // y.denominator)


def central_label(setup: CentralSetup, z, G: GroupDescriptor, q: int, ell: int) -> str:
    """Canonical label of the ell'-part of z up to the relevant conjugacy."""
    vals = [_ell_prime_part(v, ell) for v in setup.eigenvalues(z, G)]
    shifts = [Fraction(0)]
    if G.is_linear and setup.N0 > 1:
        shifts = sorted({_ell_prime_part(Fraction(s, setup.N0), ell) for s in range(setup.N0)})
    best = min(tuple(sorted((v + s) % 1 for v in vals)) for s in shifts)
    if all(v == 0 for v in best):
        return "1"
    mult = Counter(v for v in best if v != 0)
    return "{" + ",".join(f"{v}" + (f"^{m}" if m > 1 else "") for v, m in sorted(mult.items())) + "}"


# ---------------------------------------------------------------- pseudo-unipotent sets

@dataclass(frozen=True)
class ZOrbit:
    representative: tuple[int, ...]
    size: int
    stabilizer: frozenset


def pseudo_set(chain: EChain, gamma, q: int, reduce_center: bool | None = None) -> list[ZOrbit]:
    """Orbits of the stabilizer of (chain, M) on the z-labels of Z(K*)^F.

    By default the centre of the connected-centre group is divided out only
    in the sc model; local counts always divide it out.
    """
    if reduce_center is None:
        reduce_center = chain.G.model == "sc"
    tau = closing_chain(chain, gamma)
    return _z_orbits(tau, q, reduce_center)


@lru_cache(maxsize=2048)
def _z_orbits(tau: EChain, q: int, reduce_center: bool) -> list[ZOrbit]:
    H = chain_stabilizer(tau)
    setup = central_setup(tau, q, reduce_center)
    pos_target = _pos_to_node(setup)
    seen = set()
    out = []
    for z in setup.elements():
        if z in seen:
            continue
        orbit = {setup.act(g, z, pos_target) for g in H}
        seen |= orbit
        stab = frozenset(g for g in H if setup.act(g, z, pos_target) == z)
        out.append(ZOrbit(z, len(orbit), stab))
    return out


def _pos_to_node(setup: CentralSetup) -> dict[int, int]:
    return {p: j for j, ps in enumerate(setup.node_positions) for p in ps}


# ---------------------------------------------------------------- local counts

@dataclass(frozen=True)
class LocalCharDatum:
    chain: str
    gamma: str
    z: tuple[int, ...]
    eta: int  # index into the sorted degree list of the stabilizer
    eta_degree: int
    defect: int
    block: BlockId

    def render(self) -> str:
        return f"({self.chain}; {self.gamma}; z={self.z}; eta#{self.eta}:{self.eta_degree})"


def _v(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def local_data(chain: EChain, gamma, q: int, ell: int) -> list[LocalCharDatum]:
    G = chain.G
    e = check_ell(q, ell)
    if e != chain.e:
        raise ChainError(f"chain built for e={chain.e} but q={q}, ell={ell} give e={e}")
    if gamma not in cp(chain):
        raise ChainError(f"{gamma} does not give a pair in CP of {chain}")
    tau = closing_chain(chain, gamma)
    M = tau.last
    base = order_polynomial(G, M).ell_valuation(q, ell) - degree_polynomial(G, gamma).ell_valuation(q, ell)
    setup = central_setup(tau, q, True)
    out = []
    for orb in _z_orbits(tau, q, True):
        degs = wreath_subgroup_degrees(orb.stabilizer)
        vh = _v(len(orb.stabilizer), ell)
        block = BlockId(_label_key(gamma), central_label(setup, orb.representative, G, q, ell))
        for i, d in enumerate(degs):
            out.append(LocalCharDatum(chain.render(), str(gamma), orb.representative, i, d,
                                      base + vh - _v(d, ell), block))
    return out


def local_count(chain: EChain, gamma, q: int, ell: int) -> CountTable:
    table = CountTable()
    for x in local_data(chain, gamma, q, ell):
        table[(x.block, x.defect)] += 1
    return table


def transport_check(chain: EChain, gamma, q: int, ell: int) -> bool:
    if m_is_last(chain, gamma):
        raise ChainError("transport needs L(sigma) > M")
    return local_count(chain, gamma, q, ell) == local_count(plus_m(chain, gamma), gamma, q, ell)


def block_of_local(chain: EChain, gamma, z, q: int, ell: int) -> BlockId:
    tau = closing_chain(chain, gamma)
    setup = central_setup(tau, q, True)
    return BlockId(_label_key(gamma), central_label(setup, setup.canon(tuple(z)), chain.G, q, ell))


def triples(G: GroupDescriptor, e: int, chains: list[EChain] | None = None) -> list[tuple[EChain, object]]:
    chains = enumerate_chains(G, e) if chains is None else chains
    return [(ch, g) for ch in chains for g in cp(ch)]
