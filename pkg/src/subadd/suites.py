"""Verification suites shared by the command line and the tests.

Each suite takes an ExperimentConfig and returns (corpus, assertions), where an
assertion is {name, pass, counterexample?} plus optional counters.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

from .exactla import Field, is_prime
from .geometry import (
    FromModule, FromPiPoint, Sum, adloc_member, bitset, build_corpus, census,
    decompose_irreducible, verify_pipoint_lemmas, make_assertion,
)
from .homalg import bcr_gap_check, ext_dim, tate_ext_dim
from .modrep import GroupDesc, is_indecomposable, is_isomorphic, is_projective, oplus
from .pipoints import PiPoint, projective_points, thick_member

SUITES = ("adloc", "sums", "bcr", "pipoint", "pointmodule", "cb-decomp")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    p: int = 2
    r: int = 2
    base_degree: int | None = None
    ext: list = field(default_factory=lambda: [1])
    seed: int = 0
    corpus_size: int = 30
    max_dim: int = 10
    window: tuple = (-6, 8)
    tate_window: tuple = (-3, 3)
    rgap: int = 4
    sumcap: int = 2
    bcr_pairs: int = 144
    out: str | None = None
    format: str = "json"

    def validate(self):
        if not is_prime(self.p):
            raise ConfigError(f"p = {self.p} is not prime")
        if self.r < 1:
            raise ConfigError("r must be >= 1")
        degrees = list(self.ext) + ([self.base_degree] if self.base_degree is not None else [])
        if not self.ext or any(int(d) < 1 for d in degrees):
            raise ConfigError("field degrees must be >= 1")
        if self.base_degree is not None and any(int(n) % self.base_degree for n in self.ext):
            raise ConfigError("every extension degree must be a multiple of the base degree")
        for name in ("window", "tate_window"):
            lo, hi = getattr(self, name)
            if not lo <= 0 <= hi:
                raise ConfigError(f"{name} must be an interval containing 0")
        if self.rgap < 1 or self.sumcap < 1 or self.corpus_size < 1 or self.max_dim < 1:
            raise ConfigError("rgap, sumcap, corpus_size and max_dim must be positive")
        if self.format not in ("json", "tsv"):
            raise ConfigError("format must be json or tsv")
        return self

    @classmethod
    def from_dict(cls, d):
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        d = dict(d)
        for key in ("window", "tate_window"):
            if key in d:
                d[key] = tuple(d[key])
        if "ext" in d and isinstance(d["ext"], int):
            d["ext"] = [d["ext"]]
        try:
            return cls(**d).validate()
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_json(self):
        d = asdict(self)
        d["window"] = list(self.window)
        d["tate_window"] = list(self.tate_window)
        d.pop("out")
        d.pop("format")
        return d

    @property
    def group(self):
        return GroupDesc(self.p, self.r)

    @property
    def base(self):
        return Field(self.p, self.base_degree or 1)

    @property
    def extensions(self):
        return [Field(self.p, int(n)) for n in self.ext]

    def corpus(self):
        return build_corpus(self.group, self.base, self.seed, self.corpus_size,
                            extensions=self.extensions, max_dim=self.max_dim)


def _alphas(cfg, corpus):
    return [a for a, _ in corpus.witnesses]


def suite_adloc(cfg, corpus):
    """Definitional additive locus against the Ext^1 criterion."""
    bad, pairs = [], 0
    for j, M in enumerate(corpus.modules):
        fn = FromModule(M)
        for i, Z in enumerate(corpus.modules):
            pairs += 1
            if adloc_member(fn, Z, corpus) != (ext_dim(1, Z, M) == 0):
                bad.append({"Z": i, "M": j})
    for alpha in _alphas(cfg, corpus):
        fn = FromPiPoint(alpha)
        for i, Z in enumerate(corpus.modules):
            pairs += 1
            if adloc_member(fn, Z, corpus) != adloc_member(fn, Z, corpus, "ext-oracle"):
                bad.append({"Z": i, "point": list(alpha.point.coords)})
    a = make_assertion("adloc_matches_ext1", not bad, bad)
    a["pairs"] = pairs
    return [a]


def _sum_candidates(cfg, corpus, limit=6):
    fns = [FromPiPoint(a) for a in _alphas(cfg, corpus)]
    mods = [M for M in corpus.modules if not is_projective(M)][:limit]
    return fns + [FromModule(M) for M in mods]


def suite_sums(cfg, corpus):
    """Locus of a sum is the intersection of the loci."""
    fns = _sum_candidates(cfg, corpus)
    loci = [census(f, corpus) for f in fns]
    bad, pairs = [], 0
    for i, j in itertools.combinations(range(len(fns)), 2):
        pairs += 1
        s = census(Sum([fns[i], fns[j]]), corpus)
        inter = tuple(x and y for x, y in zip(loci[i], loci[j]))
        if s != inter:
            bad.append({"functions": [fns[i].label, fns[j].label], "sum": bitset(s), "meet": bitset(inter)})
    a = make_assertion("sum_locus_is_intersection", not bad, bad)
    a["pairs"] = pairs
    return [a]


def suite_bcr(cfg, corpus):
    """Tate Ext gap falsifier and the finite-window census of Ext vanishing."""
    mods = corpus.modules
    pairs = list(itertools.product(range(len(mods)), repeat=2))[: cfg.bcr_pairs]
    triggered, bad = 0, []
    for i, j in pairs:
        rep = bcr_gap_check(mods[i], mods[j], cfg.rgap, cfg.window)
        triggered += rep["triggered"]
        if rep["violations"]:
            bad.append({"X": i, "M": j, "degrees": rep["violations"]})
    gap = make_assertion("tate_gap_vanishing", not bad, bad)
    gap.update(pairs=len(pairs), triggered=triggered, r_gap=cfg.rgap, r_gap_status="tested hypothesis")
    lo, hi = cfg.tate_window
    mism = []
    for j, M in enumerate(mods):
        loc = census(FromModule(M), corpus)
        win = tuple(all(tate_ext_dim(n, X, M) == 0 for n in range(lo, hi + 1)) for X in mods)
        if loc != win:
            mism.append({"M": j, "adloc": bitset(loc), "tate": bitset(win)})
    cen = make_assertion("adloc_equals_tate_window", not mism, mism)
    return [gap, cen]


def suite_pipoint(cfg, corpus):
    """Locus of chi_alpha equals Thick(alpha) for every enumerated point."""
    bad = []
    for K in cfg.extensions:
        for pt in projective_points(cfg.r, K):
            alpha = PiPoint(cfg.group, K, pt.coords, base=cfg.base)
            loc = census(FromPiPoint(alpha), corpus)
            thick = tuple(thick_member(alpha, M) for M in corpus.modules)
            if loc != thick:
                bad.append({"K": K.q, "point": list(pt.coords), "adloc": bitset(loc), "thick": bitset(thick)})
    return [make_assertion("adloc_equals_thick", not bad, bad)]


def suite_pointmodule(cfg, corpus):
    out = []
    for K in cfg.extensions:
        rep = verify_pipoint_lemmas(cfg.group, cfg.base, K, cfg.seed, corpus=corpus)
        for a in rep["assertions"]:
            if a["name"] == "adloc_equals_thick":
                continue
            a = dict(a)
            a["name"] = f"{a['name']}[GF({K.q})]"
            out.append(a)
    return out


def suite_cb_decomp(cfg, corpus, limit=8):
    """Sums of module functions follow the indecomposable summands."""
    indec = []
    for M in corpus.modules:
        if M.dim and is_indecomposable(M) and not any(is_isomorphic(M, N) for N in indec):
            indec.append(M)
        if len(indec) >= limit:
            break
    mods = corpus.modules
    bad, pairs = [], 0
    for A, B in itertools.combinations_with_replacement(indec, 2):
        pairs += 1
        fa, fb, fab = FromModule(A), FromModule(B), FromModule(oplus(A, B))
        for i, X in enumerate(mods):
            expect = fa(X) if A is B else fa(X) + fb(X)
            if fab(X) != expect:
                bad.append({"modules": [A.provenance, B.provenance], "X": i})
                break
        parts = decompose_irreducible(fab)
        if len(parts) != (1 if A is B else 2):
            bad.append({"modules": [A.provenance, B.provenance], "parts": len(parts)})
    a = make_assertion("module_functions_follow_summands", not bad, bad)
    a["pairs"] = pairs
    return [a]


RUNNERS = {
    "adloc": suite_adloc, "sums": suite_sums, "bcr": suite_bcr, "pipoint": suite_pipoint,
    "pointmodule": suite_pointmodule, "cb-decomp": suite_cb_decomp,
}


def run_suite(name, cfg, corpus=None):
    corpus = corpus or cfg.corpus()
    return corpus, RUNNERS[name](cfg, corpus)
