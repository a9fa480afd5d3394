"""Verification configs: a key = value text file with sections, overridden by CLI flags.

    [character]
    disc = -23
    cond = 1
    xi_order = 3
    xi_index = 0

    [opt-unique]
    primes = 7, 11, 13, 17, 19
    bound = 50

    [main-identity]
    p = 11
    ell = 5
    t = 1
    lambdas = 2, 3, 13
    prec = 0
    log_convention = norm

    [properties]
    mass_pmax = 199
    brandt_primes = 11, 13, 23, 37
"""
import configparser
from dataclasses import asdict, dataclass, field

from sympy import isprime

from ..exactmath.modular import ConfigurationError
from ..quadratic.forms import fundamental_part, is_fundamental


def _ints(s):
    s = s.strip()
    return [int(x) for x in s.replace(",", " ").split()] if s else []


@dataclass
class VerifyConfig:
    disc_K: int = -23
    c: int = 1
    xi_order: int = 3
    xi_index: int = 0
    primes: list = field(default_factory=lambda: [7, 11, 13, 17, 19])
    bound: int = 50
    p: int = 11
    ell: int = 5
    t: int = 1
    lambdas: list = field(default_factory=list)
    prec: int = 0
    log_convention: str = "norm"
    mass_pmax: int = 199
    brandt_primes: list = field(default_factory=lambda: [11, 13, 23, 37])
    mode: str = "opt-unique"

    @property
    def disc(self):
        return self.c * self.c * self.disc_K

    def as_dict(self):
        return asdict(self)

    def validate(self):
        if not is_fundamental(self.disc_K):
            raise ConfigurationError(f"disc_K = {self.disc_K} is not a negative fundamental discriminant")
        if self.c < 1:
            raise ConfigurationError("cond must be positive")
        if self.xi_order < 2:
            raise ConfigurationError("xi must be nontrivial (xi_order >= 2)")
        if self.bound < 1:
            raise ConfigurationError("bound must be positive")
        bad = [q for q in self.primes + self.brandt_primes if q < 5 or not isprime(q)]
        if bad:
            raise ConfigurationError(f"primes must be >= 5: {bad}")
        if self.mode == "main-identity":
            if not (isprime(self.p) and self.p >= 5):
                raise ConfigurationError(f"p = {self.p} must be a prime >= 5")
            if not (isprime(self.ell) and self.ell >= 5):
                raise ConfigurationError(f"ell = {self.ell} must be a prime >= 5")
            if self.t < 1 or (self.p - 1) % self.ell ** self.t:
                raise ConfigurationError(f"{self.ell}^{self.t} must divide p - 1 = {self.p - 1}")
        if self.log_convention not in ("norm", "compatible"):
            raise ConfigurationError("log_convention is 'norm' or 'compatible'")
        return self


def load_config(path=None, overrides=None):
    """Read a config file (optional) and apply flag overrides (None values are ignored)."""
    cfg = VerifyConfig()
    if path:
        cp = configparser.ConfigParser()
        try:
            with open(path) as fh:
                cp.read_file(fh)
        except (OSError, configparser.Error) as e:
            raise ConfigurationError(f"cannot read config {path}: {e}") from None
        try:
            _apply_sections(cfg, cp)
        except ValueError as e:
            raise ConfigurationError(f"bad value in {path}: {e}") from None
    for k, v in (overrides or {}).items():
        if v is not None:
            setattr(cfg, k, v)
    return cfg


def _apply_sections(cfg, cp):
    g = cp["character"] if cp.has_section("character") else {}
    if "disc" in g:
        set_disc(cfg, int(g["disc"]), int(g["cond"]) if "cond" in g else None)
    elif "cond" in g:
        cfg.c = int(g["cond"])
    if "xi_order" in g:
        cfg.xi_order = int(g["xi_order"])
    if "xi_index" in g:
        cfg.xi_index = int(g["xi_index"])
    if cp.has_section("opt-unique"):
        s = cp["opt-unique"]
        if "primes" in s:
            cfg.primes = _ints(s["primes"])
        if "bound" in s:
            cfg.bound = int(s["bound"])
    if cp.has_section("main-identity"):
        s = cp["main-identity"]
        for key in ("p", "ell", "t", "prec"):
            if key in s:
                setattr(cfg, key, int(s[key]))
        if "lambdas" in s:
            cfg.lambdas = _ints(s["lambdas"])
        if "log_convention" in s:
            cfg.log_convention = s["log_convention"].strip()
    if cp.has_section("properties"):
        s = cp["properties"]
        if "mass_pmax" in s:
            cfg.mass_pmax = int(s["mass_pmax"])
        if "brandt_primes" in s:
            cfg.brandt_primes = _ints(s["brandt_primes"])


def set_disc(cfg, disc, cond=None):
    """Accept either a fundamental disc with a conductor or the discriminant of the order."""
    if cond is None:
        try:
            dK, c = fundamental_part(disc)
        except ValueError as e:
            raise ConfigurationError(str(e)) from None
        cfg.disc_K, cfg.c = dK, c
    else:
        cfg.disc_K, cfg.c = disc, cond
    return cfg
