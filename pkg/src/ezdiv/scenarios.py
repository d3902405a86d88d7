"""Scenario runner behind ``ezdiv verify``.

Every suite returns a list of Reports.  Randomness comes from
``random.Random`` (Mersenne Twister) seeded with the string
``"<seed>:<suite>"`` and, for matrix twists, numpy's PCG64 seeded with the
integer seed, so a given seed reproduces the same output byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

import numpy as np

from .errors import EzdivError
from .homology import (
    PairSetting,
    betti_routes,
    tor_dims,
    verify_betti_bounds,
    verify_change_of_rings,
    verify_nonvanishing,
    verify_vanishing_transfer,
)
from .lifting import (
    Lifted,
    canonical_endomorphism,
    ext2_class,
    lift_module,
    null_homotopy,
    preimage_complex,
    random_twist,
    reduces_to_base,
)
from .modules import free, random_presentation, realize, residue_field
from .report import Report
from .resolve import check_complex, minimal_resolution, pad_with_trivial

SUITES = ("lemma", "transfer", "nonvanishing", "betti", "lifting", "properties")


@dataclass
class SuiteConfig:
    seed: int = 0
    random: int = 20
    lemma_q: int = 6
    transfer_window: int = 9
    nonvanishing_horizon: int = 8
    betti_horizon: int = 8
    lifting_horizon: int = 8
    property_horizon: int = 5
    # cut graded resolutions at this internal degree in the nonvanishing suite
    nonvanishing_degree_limit: int | None = None

    def for_ring(self, setting: PairSetting) -> "SuiteConfig":
        """Shrink the expensive horizons on larger rings (dim S >= 8)."""
        cfg = self
        if setting.S.dim >= 8:
            cfg = replace(cfg, betti_horizon=min(cfg.betti_horizon, 6),
                          lifting_horizon=min(cfg.lifting_horizon, 4),
                          property_horizon=min(cfg.property_horizon, 4))
            if setting.S.is_graded and cfg.nonvanishing_degree_limit is None:
                cfg = replace(cfg, nonvanishing_degree_limit=cfg.nonvanishing_horizon)
        return cfg


def _rng(cfg: SuiteConfig, suite: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{suite}")


def _random_modules(setting: PairSetting, rng: random.Random, count: int) -> list:
    return [(f"rand{j}", realize(random_presentation(setting.R, rng))) for j in range(count)]


def _not_applicable(rep: Report) -> Report:
    """Turn a failed hypothesis on a random instance into a not-applicable verdict."""
    if rep.hypothesis.startswith("failed: "):
        rep.hypothesis = "not-applicable: " + rep.hypothesis[len("failed: "):]
    return rep


def lemma_suite(setting: PairSetting, cfg: SuiteConfig) -> list:
    mods = [("k", residue_field(setting.R))] + _random_modules(setting, _rng(cfg, "lemma"), cfg.random)
    return [verify_change_of_rings(setting, n, cfg.lemma_q, name) for name, n in mods]


def transfer_suite(setting: PairSetting, cfg: SuiteConfig) -> list:
    r, k = setting.R, residue_field(setting.R)
    out = verify_vanishing_transfer(setting, free(r, 2), k, cfg.transfer_window, ("R^2", "k"), strict=False)
    for name, m in _random_modules(setting, _rng(cfg, "transfer"), max(1, cfg.random // 5)):
        reps = verify_vanishing_transfer(setting, m, k, cfg.transfer_window, (name, "k"), strict=False)
        out += [_not_applicable(rep) for rep in reps]
    return out


def nonvanishing_suite(setting: PairSetting, cfg: SuiteConfig) -> list:
    k = residue_field(setting.R)
    rep = verify_nonvanishing(setting, k, k, cfg.nonvanishing_horizon, ("k", "k"), strict=False,
                              degree_limit=cfg.nonvanishing_degree_limit)
    # the statement assumes x, y outside m^2; when they are not, it says nothing
    return [_not_applicable(rep)]


def betti_suite(setting: PairSetting, cfg: SuiteConfig) -> list:
    k = residue_field(setting.R)
    return [verify_betti_bounds(setting, k, k, cfg.betti_horizon, ("k", "k"), strict=False)]


def _lift_report(setting: PairSetting, name: str, m, horizon: int) -> Report:
    res = lift_module(m, setting, horizon)
    rep = Report(f"lifting {setting.label()} M={name}")
    if isinstance(res, Lifted):
        rep.notes += res.report.notes
        rep.rows += res.report.rows
        f = minimal_resolution(m, res.horizon)
        rep.add("d# = d mod x", True, reduces_to_base(res.complex, f, setting.surj))
        rep.add("certificate", res.certificate, res.certificate)
    else:
        rep.notes.append(f"Ext^2 class coordinates {res.obstruction.coordinates}")
        rep.add("class", "nonzero", "zero" if res.obstruction.is_zero else "nonzero")
        f = minimal_resolution(m, 3)
        s = canonical_endomorphism(preimage_complex(f, setting.surj))
        for n in (2, 3):
            found = null_homotopy(s, f, n) is not None
            rep.add(f"homotopy up to {n}", "absent", "found" if found else "absent")
    return rep


def lifting_suite(setting: PairSetting, cfg: SuiteConfig) -> list:
    if not setting.self_paired:
        return [Report(f"lifting {setting.label()}", "not-applicable: pair is not of the form (x, x)")]
    r = setting.R
    mods = [("k", residue_field(r)), ("R", free(r, 1)), ("R^2", free(r, 2))]
    mods += _random_modules(setting, _rng(cfg, "lifting"), max(1, cfg.random // 5))
    return [_lift_report(setting, name, m, cfg.lifting_horizon) for name, m in mods]


def _resolution_report(name: str, m, n: int) -> Report:
    f = minimal_resolution(m, n)
    chk = check_complex(f)
    rep = Report(f"resolution {name}")
    rep.add("d d = 0", True, chk.squares_zero)
    rep.add("minimal", True, chk.minimal)
    rep.add("exact", True, chk.exact)
    rep.add("augmentation onto", True, chk.augmentation_onto)
    for u in chk.unchecked:
        rep.notes.append(f"not checked: {u}")
    return rep


def property_suite(setting: PairSetting, cfg: SuiteConfig) -> list:
    n = cfg.property_horizon
    s_alg, r = setting.S, setting.R
    rng = _rng(cfg, "properties")
    out = []
    randoms = _random_modules(setting, rng, max(2, cfg.random // 5))
    k_r, k_s = residue_field(r), residue_field(s_alg)
    # minimality and exactness of every resolution built here
    out.append(_resolution_report("k over S", k_s, n))
    out.append(_resolution_report("k over R", k_r, n))
    out.append(_resolution_report("R over S", setting.ring_module(), n))
    for name, m in randoms:
        out.append(_resolution_report(f"{name} over R", m, n))
    # Tor symmetry
    rep = Report("tor-symmetry over R")
    pool = [("k", k_r)] + randoms
    for (a_name, a), (b_name, b) in zip(pool, pool[1:] + pool[:1]):
        t1 = tor_dims(a, b, (0, n - 1)).dims
        t2 = tor_dims(b, a, (0, n - 1)).dims
        rep.add(f"Tor({a_name},{b_name})", t1, t2)
    out.append(rep)
    # Betti numbers three ways
    rep = Report("betti-routes")
    for name, m in [("k/S", k_s), ("k/R", k_r)] + [(f"{nm}/R", m) for nm, m in randoms]:
        ranks, tor, ext = betti_routes(m, n - 1)
        rep.add(f"{name} tor", ranks, tor)
        rep.add(f"{name} ext", ranks, ext)
    out.append(rep)
    out += _canonical_properties(setting, cfg, randoms)
    return out


def _canonical_properties(setting: PairSetting, cfg: SuiteConfig, randoms) -> list:
    rep = Report(f"canonical-endomorphism {setting.label()}")
    if not setting.self_paired:
        rep.hypothesis = "not-applicable: pair is not of the form (x, x)"
        return [rep]
    gen = np.random.default_rng(cfg.seed)
    n = max(4, min(cfg.property_horizon, 5))
    for name, m in [("k", residue_field(setting.R)), ("R", free(setting.R, 1))] + randoms:
        f = minimal_resolution(m, n)
        pf = preimage_complex(f, setting.surj)
        rep.add(f"{name} preimage", True, pf.check())
        s = canonical_endomorphism(pf)
        rep.add(f"{name} chain map", True, s.check())
        s_alt = canonical_endomorphism(pf, rng=gen)
        same = all(np.array_equal(s[i], s_alt[i]) for i in s.maps)
        rep.add(f"{name} division-independent", True, same)
        flag = ext2_class(s, f, m).is_zero
        twisted = preimage_complex(f, setting.surj, random_twist(pf, gen))
        flag_tw = ext2_class(canonical_endomorphism(twisted), f, m).is_zero
        rep.add(f"{name} preimage-independent", flag, flag_tw)
        for j in (1, 2):
            g = pad_with_trivial(f, j)
            flag_pad = ext2_class(canonical_endomorphism(preimage_complex(g, setting.surj)), g, m).is_zero
            rep.add(f"{name} padded at {j}", flag, flag_pad)
        homotopy = null_homotopy(s, f, 3) is not None
        rep.add(f"{name} class zero iff homotopy", flag, homotopy)
    return [rep]


RUNNERS = {
    "lemma": lemma_suite,
    "transfer": transfer_suite,
    "nonvanishing": nonvanishing_suite,
    "betti": betti_suite,
    "lifting": lifting_suite,
    "properties": property_suite,
}


def run_suite(setting: PairSetting, suite: str, cfg: SuiteConfig | None = None) -> list:
    cfg = (cfg or SuiteConfig()).for_ring(setting)
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        try:
            out += RUNNERS[name](setting, cfg)
        except EzdivError as e:
            out.append(Report(name, f"failed: {type(e).__name__}: {e}"))
    return out
