"""
性质套件 - Property suites behind `subhyp verify`

每个套件在一个小超图上检查一组恒等式/不等式，返回检查次数与失败描述。
run_suites 在一批随机实例 (或给定超图) 上运行所选套件并汇总。

套件::

    lovasz        - f(1_S) = w(S)，⟨∇f, 1⟩ = 0，⟨∇f, x⟩ = f(x)，正齐次，基多面体成员
    reduction     - 约简 (含注入的可拆超边) 前后 vol(∂S) 处处相等
    cheeger       - 𝓡₁(1_S) = c(S)，min_S 𝓡₁(1_S) = h₂，𝓡₁(x) ≥ h₂
    thresholding  - 中心化向量的扫描切分满足 c(x) ≤ p·τ^{(p−1)/p}·𝓡_p(x)^{1/p}
    ipm           - λ̂ 单调不增且 ≥ h₂ (两种内层求解器)
    duality       - RCDM 对偶间隙，inner_sfm 与穷举 SFM 一致
    sdp           - SDP 目标不超过随机中心化向量的 𝓡₂，解可行
    rounding      - 500 次高斯舍入中 𝓡₂ ≤ 26·SDP 目标的比例 ≥ 1/26
    graph         - 图上的 Cheeger 夹逼、节点域计数、特征对与中位数性质
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from spectral.eigenpair import verify_eigenpair
from spectral.errors import BoundViolation, EigenpairRejection
from spectral.hypergraph import (
    Hyperedge,
    SubmodularHypergraph,
    boundary_volume,
    boundary_volumes_all,
    is_connected,
    reduce,
    tau,
    zeta,
)
from spectral.ipm import compute_g, default_start, inner_sfm, ipm
from spectral.laplacian import mu_split, rayleigh, z_p_mu
from spectral.nodal import count_nodal_domains
from spectral.oracle import conductance_table, dense_graph_spectrum, exact_h2, exact_sfm, random_instance
from spectral.params import RandomInstanceSpec, create_rng
from spectral.rcdm import inner_rcdm
from spectral.sdp import ROUNDING_RATE_FLOOR, build_sdp, minimize_r2, rounding_rate, solve_sdp
from spectral.submodular.lovasz import lovasz, subgradient
from spectral.submodular.polytope import check_membership
from spectral.submodular.weights import TableWeight, popcount
from spectral.sweep import sweep_cut
from spectral.types import InnerProblem

logger = logging.getLogger(__name__)

__all__ = [
    "SuiteResult",
    "Suite",
    "SUITE_REGISTRY",
    "verify_instances",
    "graph_instances",
    "run_suites",
]

TOL = 1e-9
_LOVASZ_ARITY_CAP = 10
_SFM_CAP = 16
_SDP_N_CAP = 8
_SDP_ZETA_CAP = 4
_ROUNDING_DRAWS = 500


@dataclass
class SuiteResult:
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


@dataclass(frozen=True)
class Suite:
    run: Callable[[SubmodularHypergraph, np.random.Generator], SuiteResult]
    description: str
    graphs_only: bool = False


def _centered(G: SubmodularHypergraph, rng: np.random.Generator, p: float) -> np.ndarray:
    x = rng.standard_normal(G.n)
    c, _ = z_p_mu(x, p, G.mu)
    return x - c


# ==================== 套件 ====================


def _lovasz_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    for idx, e in enumerate(G.edges):
        w = e.weight
        if w.arity > _LOVASZ_ARITY_CAP:
            continue
        for mask in range(1 << w.arity):
            indicator = np.array([mask >> i & 1 for i in range(w.arity)], dtype=float)
            ok = abs(lovasz(w, indicator) - w.evaluate(mask)) <= TOL
            out.check(ok, f"edge {idx}: f(1_S) ≠ w(S) at mask {mask}")
        for _ in range(5):
            x = rng.standard_normal(w.arity)
            y = subgradient(w, x).coords
            f = lovasz(w, x)
            out.check(abs(float(y.sum())) <= TOL, f"edge {idx}: ⟨∇f, 1⟩ ≠ 0")
            out.check(abs(float(y @ x) - f) <= TOL * max(1.0, abs(f)), f"edge {idx}: ⟨∇f, x⟩ ≠ f(x)")
            c = float(rng.uniform(-3.0, 3.0))
            out.check(abs(lovasz(w, c * x) - abs(c) * f) <= TOL * max(1.0, abs(c * f)), f"edge {idx}: f(cx) ≠ |c|f(x)")
            out.check(check_membership(w, 1.0, y, tol=TOL), f"edge {idx}: ∇f(x) ∉ B_e")
    return out


def _merged_edge(G: SubmodularHypergraph, rng: np.random.Generator) -> Hyperedge | None:
    """Table edge on two disjoint pairs whose cut splits at the pair boundary."""
    if G.n < 4:
        return None
    members = sorted(int(v) for v in rng.choice(G.n, size=4, replace=False))
    masks = np.arange(16, dtype=np.int64)
    first = popcount(masks & 0b0011) % 2
    second = popcount(masks & 0b1100) % 2
    values = (first + second) / 2.0
    return Hyperedge(tuple(members), float(rng.uniform(0.5, 2.0)), TableWeight(4, values))


def _reduction_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    extra = _merged_edge(G, rng)
    if extra is not None:
        G = SubmodularHypergraph(G.n, G.mu, G.edges + (extra,))
    before = boundary_volumes_all(G)
    after = boundary_volumes_all(reduce(G))
    diff = float(np.max(np.abs(before - after)))
    out.check(diff <= 1e-12 * max(1.0, float(before.max())), f"reduce changed vol(∂S) by {diff:.3e}")
    return out


def _cheeger_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    table = conductance_table(G)
    for mask in range(1, (1 << G.n) - 1):
        indicator = np.array([mask >> v & 1 for v in range(G.n)], dtype=float)
        r = rayleigh(G, indicator, 1.0)
        out.check(abs(r - table[mask]) <= TOL * max(1.0, table[mask]), f"𝓡₁(1_S) ≠ c(S) at mask {mask}")
    h2, _ = exact_h2(G)
    out.check(abs(float(table.min()) - h2) <= TOL, "min_S 𝓡₁(1_S) ≠ h₂")
    for _ in range(20):
        x = rng.standard_normal(G.n)
        out.check(rayleigh(G, x, 1.0) >= h2 - TOL, "𝓡₁(x) < h₂")
    return out


def _thresholding_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    for p in (1.0, 2.0):
        for _ in range(10):
            try:
                cut = sweep_cut(G, _centered(G, rng, p), p)
            except BoundViolation as exc:
                out.check(False, f"p={p}: c(x)={exc.conductance:.6g} > bound {exc.bound:.6g}")
            else:
                out.check(cut.centered, f"p={p}: centred vector not recognised as centred")
    return out


def _ipm_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    h2, _ = exact_h2(G)
    for inner in ("rcdm", "sfm"):
        result = ipm(G, inner=inner, seed=int(rng.integers(2**31)))
        trace = result.lambda_trace
        for k in range(1, len(trace)):
            out.check(trace[k] <= trace[k - 1] + 1e-10, f"{inner}: λ̂ rose at iteration {k}")
        out.check(result.lambda_hat >= h2 - TOL, f"{inner}: λ̂ {result.lambda_hat:.9g} < h₂ {h2:.9g}")
    return out


def _duality_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    problems = {}
    for name, x in (("random", _centered(G, rng, 1.0)), ("ipm start", default_start(G, rng))):
        lam = rayleigh(G, x, 1.0)
        problems[name] = (lam, compute_g(x, G.mu))
        result = inner_rcdm(G, InnerProblem(*problems[name], "l2"), seed=int(rng.integers(2**31)))
        out.check(abs(result.gap) <= 1e-6, f"{name}: RCDM duality gap {result.gap:.3e}")
        if result.degenerate:
            out.check(not np.any(result.z), f"{name}: degenerate RCDM result with nonzero z")
    lam, g = problems["random"]
    if G.n <= _SFM_CAP:
        fast = inner_sfm(G, InnerProblem(lam, g, "linf"))
        value, _ = exact_sfm(lambda S: boundary_volume(G, S) - lam * float(g[list(S)].sum()), G.n)
        out.check(abs(fast.objective - value) <= TOL * max(1.0, abs(value)), "inner_sfm ≠ exhaustive SFM")
    return out


def _sdp_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    if G.n > _SDP_N_CAP or zeta(G) > _SDP_ZETA_CAP:
        return out
    run = minimize_r2(G, restarts=8, seed=int(rng.integers(2**31)))
    out.check(run.solution.violation <= 1e-6, f"SDP violation {run.solution.violation:.3e}")
    best = min(rayleigh(G, _centered(G, rng, 2.0), 2.0) for _ in range(200))
    out.check(run.sdp_opt <= best + 1e-4, f"sdp_opt {run.sdp_opt:.6g} above sampled 𝓡₂ {best:.6g}")
    out.check(run.sdp_opt <= run.r2 + 1e-4, f"sdp_opt {run.sdp_opt:.6g} above rounded 𝓡₂ {run.r2:.6g}")
    return out


def _rounding_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    if G.n > _SDP_N_CAP or zeta(G) > _SDP_ZETA_CAP:
        return out
    seed = int(rng.integers(2**31))
    sol = solve_sdp(build_sdp(G), seed=seed)
    rate = rounding_rate(G, sol, draws=_ROUNDING_DRAWS, seed=seed)
    out.check(rate >= ROUNDING_RATE_FLOOR, f"rounding hit 𝓡₂ ≤ 26·SDP on {rate:.3f} of draws")
    return out


def _graph_suite(G: SubmodularHypergraph, rng: np.random.Generator) -> SuiteResult:
    out = SuiteResult()
    if not is_connected(G):
        return out
    values, vectors = dense_graph_spectrum(G)
    h2, _ = exact_h2(G)
    lam2 = float(values[1])
    t = tau(G)
    out.check((2.0 / t) * (h2 / 2.0) ** 2 <= lam2 + TOL, f"λ₂ {lam2:.9g} below Cheeger lower bound")
    out.check(lam2 <= 2.0 * h2 + TOL, f"λ₂ {lam2:.9g} above 2h₂")

    x2 = vectors[:, 1]
    _, weak = count_nodal_domains(G, x2)
    out.check(weak == 2, f"λ₂ eigenvector has {weak} weak nodal domains")
    for k in range(G.n):
        cluster = np.flatnonzero(np.abs(values - values[k]) <= 1e-8)
        first, r = int(cluster[0]) + 1, cluster.size
        strong, _ = count_nodal_domains(G, vectors[:, k])
        out.check(strong <= first + r - 1, f"eigenvector {k + 1}: {strong} strong nodal domains > {first + r - 1}")

    try:
        cert = verify_eigenpair(G, x2, lam2, 2.0)
    except EigenpairRejection as exc:
        out.check(False, f"λ₂ eigenpair rejected with residual {exc.residual:.3e}")
    else:
        plus, _, minus = mu_split(cert.x, 2.0, G.mu)
        out.check(abs(plus - minus) <= 1e-6, "accepted eigenvector violates μ₂⁺ = μ₂⁻")
    return out


SUITE_REGISTRY: dict[str, Suite] = {
    "lovasz": Suite(_lovasz_suite, "Lovász extension and subgradient identities"),
    "reduction": Suite(_reduction_suite, "boundary volume invariant under hyperedge splitting"),
    "cheeger": Suite(_cheeger_suite, "𝓡₁ on indicators equals conductance; min equals h₂"),
    "thresholding": Suite(_thresholding_suite, "sweep cut conductance within the thresholding bound"),
    "ipm": Suite(_ipm_suite, "IPM monotone descent bounded below by h₂"),
    "duality": Suite(_duality_suite, "inner problem duality gap and exact SFM agreement"),
    "sdp": Suite(_sdp_suite, "SDP objective is a relaxation of min 𝓡₂"),
    "rounding": Suite(_rounding_suite, "Gaussian rounding lands within 26·SDP often enough"),
    "graph": Suite(_graph_suite, "Cheeger sandwich, nodal domains and eigenpairs on graphs", graphs_only=True),
}
"""
套件注册表 - Suite Registry

名称 → Suite(run, description, graphs_only)
"""

_WEIGHT_CYCLE = ("homogeneous", "alpha", "table")


def verify_instances(count: int, max_n: int = 8, seed: int = 0) -> list[SubmodularHypergraph]:
    """`count` random connected hypergraphs with 3 ≤ n ≤ max_n and ζ ≤ 4."""
    rng = create_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(3, max(3, max_n) + 1))
        spec = RandomInstanceSpec(
            n=n,
            m=int(rng.integers(n - 1, 2 * n)),
            max_arity=min(4, n),
            weight_kind=_WEIGHT_CYCLE[i % len(_WEIGHT_CYCLE)],
            seed=seed + i + 1,
        )
        out.append(random_instance(spec))
    return out


def graph_instances(count: int, max_n: int = 8, seed: int = 0) -> list[SubmodularHypergraph]:
    """`count` random connected homogeneous graphs."""
    rng = create_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(3, max(3, max_n) + 1))
        spec = RandomInstanceSpec(n=n, m=int(rng.integers(n - 1, 2 * n)), max_arity=2, seed=seed + i + 1)
        out.append(random_instance(spec))
    return out


def run_suites(
    names: Sequence[str] | str = "all",
    instances: Sequence[SubmodularHypergraph] | None = None,
    count: int = 10,
    max_n: int = 8,
    seed: int = 0,
) -> dict[str, Any]:
    """
    运行套件 - Run suites and summarise

    instances 为 None 时生成 count 个随机超图 (graph 套件另生成随机图)。
    返回 {passed, suites: {name: {instances, checks, failures}}}。
    """
    if names == "all" or names == ["all"]:
        names = list(SUITE_REGISTRY)
    elif isinstance(names, str):
        names = [names]
    hypergraphs = list(instances) if instances is not None else verify_instances(count, max_n, seed)
    graphs = None
    if instances is None:
        graphs = graph_instances(count, max_n, seed)

    summary: dict[str, Any] = {}
    passed = True
    for name in names:
        suite = SUITE_REGISTRY[name]
        pool = hypergraphs
        if suite.graphs_only:
            pool = graphs if graphs is not None else [G for G in hypergraphs if zeta(G) == 2]
        rng = create_rng(seed)
        total = SuiteResult()
        used = 0
        for i, G in enumerate(pool):
            result = suite.run(G, rng)
            if result.checks:
                used += 1
            total.checks += result.checks
            total.failures.extend(f"instance {i}: {msg}" for msg in result.failures)
        logger.info("verify: %s ran %d checks on %d instances, %d failures", name, total.checks, used, len(total.failures))
        passed = passed and not total.failures
        summary[name] = {"instances": used, "checks": total.checks, "failures": total.failures}
    return {"passed": passed, "suites": summary}
