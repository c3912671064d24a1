"""Length spectra: per-class geometric data feeding the Selberg and Ruelle evaluators.

A spectrum is a finite list of primitive classes.  Each class carries its
geodesic length, an integer Euler-characteristic weight, the eigenvalues of
the twisting representation, and the unit-modulus phases of the contraction
on the two root spaces.  The full contraction eigenvalue of grade ``g`` is
``phase * exp(-g * alpha_norm * length)``.

Spectra are stored as JSON::

    {"alpha_norm": 1.0, "d1": 1, "d2": 0,
     "classes": [{"id": "g0", "length": 2.0, "weight": 1,
                  "omega_eigs": [[1.0, 0.0]],
                  "phases_grade1": [[1.0, 0.0]], "phases_grade2": []}]}
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "PrimitiveClass",
    "LengthSpectrum",
    "PoweredClassData",
    "SpectrumParseError",
    "SpectrumValidationError",
    "validate_spectrum",
    "load_spectrum",
    "save_spectrum",
    "spectrum_to_dict",
    "spectrum_from_dict",
    "power_class",
    "synth_spectrum",
]

UNIT_TOL = 1e-12

_TOP_FIELDS = {"alpha_norm", "d1", "d2", "classes"}
_CLASS_FIELDS = {"id", "length", "weight", "omega_eigs", "phases_grade1", "phases_grade2"}


class SpectrumParseError(ValueError):
    """Malformed spectrum file (not JSON, wrong shape, unknown fields)."""


class SpectrumValidationError(ValueError):
    """Spectrum violates one or more invariants; ``problems`` lists all of them."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("invalid spectrum:\n  " + "\n  ".join(self.problems))


@dataclass(frozen=True)
class PrimitiveClass:
    id: str
    length: float
    weight: int
    omega_eigs: tuple[complex, ...]
    phases_grade1: tuple[complex, ...] = ()
    phases_grade2: tuple[complex, ...] = ()

    def __post_init__(self):
        # normalise list input so that equality and hashing behave
        for name in ("omega_eigs", "phases_grade1", "phases_grade2"):
            object.__setattr__(self, name, tuple(complex(z) for z in getattr(self, name)))


@dataclass(frozen=True)
class LengthSpectrum:
    alpha_norm: float
    d1: int
    d2: int
    classes: tuple[PrimitiveClass, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))

    @property
    def rho_norm(self) -> float:
        """Norm of the half-sum of positive roots, ``|alpha| (d1 + 2 d2) / 2``."""
        return self.alpha_norm * (self.d1 + 2 * self.d2) / 2

    @property
    def min_length(self) -> float:
        return min((c.length for c in self.classes), default=math.inf)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def with_classes(self, classes) -> "LengthSpectrum":
        return LengthSpectrum(self.alpha_norm, self.d1, self.d2, tuple(classes))


def _conj_closed(values: Sequence[complex], tol: float = 1e-9) -> bool:
    """Multiset equality of ``values`` and their conjugates, greedy matching."""
    remaining = list(values)
    for z in values:
        target = z.conjugate()
        for i, w in enumerate(remaining):
            if abs(w - target) <= tol:
                del remaining[i]
                break
        else:
            return False
    return True


def validate_spectrum(spec: LengthSpectrum) -> list[str]:
    """Return the list of violated invariants (empty when valid)."""
    problems = []
    if not (isinstance(spec.alpha_norm, (int, float)) and math.isfinite(spec.alpha_norm)
            and spec.alpha_norm > 0):
        problems.append(f"alpha_norm must be a positive real, got {spec.alpha_norm!r}")
    for name in ("d1", "d2"):
        v = getattr(spec, name)
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            problems.append(f"{name} must be a nonnegative integer, got {v!r}")
    seen = set()
    for c in spec.classes:
        tag = f"class {c.id!r}"
        if c.id in seen:
            problems.append(f"{tag}: duplicate id")
        seen.add(c.id)
        if not (math.isfinite(c.length) and c.length > 0):
            problems.append(f"{tag}: length must be > 0, got {c.length!r}")
        if not isinstance(c.weight, int) or isinstance(c.weight, bool):
            problems.append(f"{tag}: weight must be an integer, got {c.weight!r}")
        if len(c.omega_eigs) == 0:
            problems.append(f"{tag}: omega_eigs is empty")
        for name in ("omega_eigs", "phases_grade1", "phases_grade2"):
            for z in getattr(c, name):
                if not abs(abs(z) - 1.0) <= UNIT_TOL:
                    problems.append(f"{tag}: {name} entry {z!r} has modulus {abs(z)!r} != 1")
        for name, dim in (("phases_grade1", spec.d1), ("phases_grade2", spec.d2)):
            phases = getattr(c, name)
            if isinstance(dim, int) and len(phases) != dim:
                problems.append(f"{tag}: {name} has {len(phases)} entries, expected {dim}")
            if not _conj_closed(phases):
                problems.append(f"{tag}: {name} is not closed under complex conjugation")
    return problems


def check_spectrum(spec: LengthSpectrum) -> LengthSpectrum:
    problems = validate_spectrum(spec)
    if problems:
        raise SpectrumValidationError(problems)
    return spec


# -- serialisation ---------------------------------------------------------

def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _unpair(raw, where: str) -> complex:
    if (not isinstance(raw, list) or len(raw) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)):
        raise SpectrumParseError(f"{where}: expected [re, im] pair, got {raw!r}")
    return complex(float(raw[0]), float(raw[1]))


def spectrum_to_dict(spec: LengthSpectrum) -> dict:
    return {
        "alpha_norm": spec.alpha_norm,
        "d1": spec.d1,
        "d2": spec.d2,
        "classes": [
            {
                "id": c.id,
                "length": c.length,
                "weight": c.weight,
                "omega_eigs": [_pair(z) for z in c.omega_eigs],
                "phases_grade1": [_pair(z) for z in c.phases_grade1],
                "phases_grade2": [_pair(z) for z in c.phases_grade2],
            }
            for c in spec.classes
        ],
    }


def _number(raw, where: str) -> float:
    if not isinstance(raw, (int, float)) or isinstance(raw, bool):
        raise SpectrumParseError(f"{where}: expected a number, got {raw!r}")
    return float(raw)


def _integer(raw, where: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise SpectrumParseError(f"{where}: expected an integer, got {raw!r}")
    return raw


def spectrum_from_dict(data) -> LengthSpectrum:
    """Build and validate a spectrum from decoded JSON."""
    if not isinstance(data, dict):
        raise SpectrumParseError("top level must be a JSON object")
    unknown = set(data) - _TOP_FIELDS
    missing = _TOP_FIELDS - set(data)
    if unknown:
        raise SpectrumParseError(f"unknown fields: {sorted(unknown)}")
    if missing:
        raise SpectrumParseError(f"missing fields: {sorted(missing)}")
    if not isinstance(data["classes"], list):
        raise SpectrumParseError("'classes' must be an array")
    classes = []
    for i, raw in enumerate(data["classes"]):
        where = f"classes[{i}]"
        if not isinstance(raw, dict):
            raise SpectrumParseError(f"{where}: expected an object")
        unknown = set(raw) - _CLASS_FIELDS
        missing = _CLASS_FIELDS - set(raw)
        if unknown:
            raise SpectrumParseError(f"{where}: unknown fields: {sorted(unknown)}")
        if missing:
            raise SpectrumParseError(f"{where}: missing fields: {sorted(missing)}")
        if not isinstance(raw["id"], str):
            raise SpectrumParseError(f"{where}.id: expected a string")
        lists = {}
        for name in ("omega_eigs", "phases_grade1", "phases_grade2"):
            if not isinstance(raw[name], list):
                raise SpectrumParseError(f"{where}.{name}: expected an array")
            lists[name] = [_unpair(z, f"{where}.{name}[{j}]") for j, z in enumerate(raw[name])]
        classes.append(PrimitiveClass(
            id=raw["id"],
            length=_number(raw["length"], f"{where}.length"),
            weight=_integer(raw["weight"], f"{where}.weight"),
            **lists,
        ))
    spec = LengthSpectrum(
        alpha_norm=_number(data["alpha_norm"], "alpha_norm"),
        d1=_integer(data["d1"], "d1"),
        d2=_integer(data["d2"], "d2"),
        classes=tuple(classes),
    )
    return check_spectrum(spec)


def load_spectrum(path: str | os.PathLike) -> LengthSpectrum:
    """Read a spectrum file; raises FileNotFoundError, SpectrumParseError or
    SpectrumValidationError."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpectrumParseError(f"{path}: {exc}") from exc
    return spectrum_from_dict(data)


def save_spectrum(spec: LengthSpectrum, path: str | os.PathLike) -> None:
    check_spectrum(spec)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spectrum_to_dict(spec), fh, indent=1)
        fh.write("\n")


# -- powers ------------------------------------------------------------------

@dataclass(frozen=True)
class PoweredClassData:
    length: float
    weight: int
    omega_eigs: tuple[complex, ...]
    phases_grade1: tuple[complex, ...]
    phases_grade2: tuple[complex, ...]
    contraction_grade1: tuple[complex, ...]
    contraction_grade2: tuple[complex, ...]

    @property
    def contraction(self) -> tuple[complex, ...]:
        return self.contraction_grade1 + self.contraction_grade2


def power_class(c: PrimitiveClass, m: int, alpha_norm: float) -> PoweredClassData:
    """Data of the ``m``-th power of a primitive class."""
    if m < 1:
        raise ValueError(f"power must be >= 1, got {m}")
    length = m * c.length
    p1 = tuple(z**m for z in c.phases_grade1)
    p2 = tuple(z**m for z in c.phases_grade2)
    r1 = math.exp(-alpha_norm * length)
    r2 = math.exp(-2 * alpha_norm * length)
    return PoweredClassData(
        length=length,
        weight=c.weight,
        omega_eigs=tuple(z**m for z in c.omega_eigs),
        phases_grade1=p1,
        phases_grade2=p2,
        contraction_grade1=tuple(z * r1 for z in p1),
        contraction_grade2=tuple(z * r2 for z in p2),
    )


# -- synthetic spectra -------------------------------------------------------

def _random_phases(rng: np.random.Generator, dim: int) -> tuple[complex, ...]:
    out = []
    for _ in range(dim // 2):
        z = complex(np.exp(1j * rng.uniform(0, np.pi)))
        out += [z, z.conjugate()]
    if dim % 2:
        out.append(complex(rng.choice([-1.0, 1.0])))
    return tuple(out)


def synth_spectrum(kind: str = "arithmetic", *, n_classes: int = 3, l0: float = 1.0,
                   d1: int = 0, d2: int = 0, alpha_norm: float = 1.0,
                   omega_dim: int = 1, spread: float = 2.0, max_weight: int = 2,
                   seed: int = 0, closed_omega: bool = False) -> LengthSpectrum:
    """Deterministic test spectra.

    ``arithmetic`` gives lengths ``l0, 2 l0, ...`` with unit weights and trivial
    phases.  ``random`` draws lengths in ``[l0, l0 + spread)``, nonzero weights in
    ``[-max_weight, max_weight]`` and random unit eigenvalues; grade phases are
    built in conjugate pairs (plus a real +-1 for odd dimension), and so are the
    omega eigenvalues when ``closed_omega`` is set.
    """
    if n_classes < 0 or d1 < 0 or d2 < 0 or omega_dim < 1:
        raise ValueError("class count and dimensions must be nonnegative (omega_dim >= 1)")
    if not (l0 > 0 and alpha_norm > 0):
        raise ValueError("l0 and alpha_norm must be positive")
    if kind == "arithmetic":
        classes = [
            PrimitiveClass(f"c{k}", l0 * (k + 1), 1, (1.0,) * omega_dim, (1.0,) * d1, (1.0,) * d2)
            for k in range(n_classes)
        ]
    elif kind == "random":
        if spread < 0 or max_weight < 1:
            raise ValueError("spread must be >= 0 and max_weight >= 1")
        rng = np.random.default_rng(seed)
        classes = []
        for k in range(n_classes):
            length = float(l0 + spread * rng.random())
            weight = int(rng.choice([w for w in range(-max_weight, max_weight + 1) if w]))
            if closed_omega:
                omega = _random_phases(rng, omega_dim)
            else:
                omega = tuple(complex(np.exp(2j * np.pi * rng.random())) for _ in range(omega_dim))
            classes.append(PrimitiveClass(f"c{k}", length, weight, omega,
                                          _random_phases(rng, d1), _random_phases(rng, d2)))
    else:
        raise ValueError(f"unknown kind {kind!r}; expected 'arithmetic' or 'random'")
    return check_spectrum(LengthSpectrum(float(alpha_norm), d1, d2, tuple(classes)))
