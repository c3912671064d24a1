import cmath
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from zetalab.spectra import (
    LengthSpectrum,
    PrimitiveClass,
    SpectrumParseError,
    SpectrumValidationError,
    check_spectrum,
    load_spectrum,
    power_class,
    save_spectrum,
    spectrum_from_dict,
    spectrum_to_dict,
    synth_spectrum,
    validate_spectrum,
)


def _write(tmp_path, data):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(data))
    return path


MINIMAL = {
    "alpha_norm": 1.0,
    "d1": 1,
    "d2": 0,
    "classes": [
        {"id": "g", "length": 2.0, "weight": 1, "omega_eigs": [[1, 0]],
         "phases_grade1": [[1, 0]], "phases_grade2": []},
    ],
}


def test_empty_spectrum_file(tmp_path):
    spec = load_spectrum(_write(tmp_path, {"alpha_norm": 1.0, "d1": 0, "d2": 0, "classes": []}))
    assert spec.classes == ()
    assert spec.min_length == math.inf


def test_minimal_file_accepted(tmp_path):
    spec = load_spectrum(_write(tmp_path, MINIMAL))
    (c,) = spec.classes
    assert c.length == 2.0 and c.weight == 1
    assert c.omega_eigs == (1 + 0j,) and c.phases_grade1 == (1 + 0j,)


def test_bad_modulus_names_class(tmp_path):
    data = json.loads(json.dumps(MINIMAL))
    data["classes"][0]["phases_grade1"] = [[1.1, 0]]
    with pytest.raises(SpectrumValidationError) as err:
        load_spectrum(_write(tmp_path, data))
    assert "'g'" in str(err.value)


def test_every_problem_is_listed():
    bad = LengthSpectrum(1.0, 1, 0, (
        PrimitiveClass("a", -1.0, 1, (1,), (1,)),
        PrimitiveClass("a", 1.0, 1, (), (1j,)),
    ))
    problems = validate_spectrum(bad)
    assert len(problems) >= 4  # length, duplicate id, empty omega, unclosed phases
    with pytest.raises(SpectrumValidationError) as err:
        check_spectrum(bad)
    assert err.value.problems == problems


def test_unknown_and_missing_fields(tmp_path):
    data = dict(MINIMAL, extra=1)
    with pytest.raises(SpectrumParseError):
        load_spectrum(_write(tmp_path, data))
    data = {k: v for k, v in MINIMAL.items() if k != "d2"}
    with pytest.raises(SpectrumParseError):
        load_spectrum(_write(tmp_path, data))


def test_not_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SpectrumParseError):
        load_spectrum(path)


def test_power_identity():
    c = PrimitiveClass("g", 1.5, 2, (1j, -1j), (cmath.exp(0.3j), cmath.exp(-0.3j)))
    d = power_class(c, 1, 1.0)
    assert d.length == c.length and d.omega_eigs == c.omega_eigs
    assert d.phases_grade1 == c.phases_grade1


def test_power_squares_omega():
    d = power_class(PrimitiveClass("g", 1.0, 1, (1j,)), 2, 1.0)
    assert abs(d.omega_eigs[0] - (-1)) < 1e-15


def test_power_contraction():
    c = PrimitiveClass("g", 2.0, 1, (1,), (cmath.exp(1j * math.pi / 3),))
    (z,) = power_class(c, 3, 1.0).contraction
    # phase (e^{i pi/3})^3, modulus e^{-alpha * 3 * 2}
    assert abs(z - (-1) * math.exp(-6)) < 1e-17


def test_synth_arithmetic():
    spec = synth_spectrum("arithmetic", n_classes=3, l0=1.0)
    assert [c.length for c in spec] == [1.0, 2.0, 3.0]
    assert all(c.weight == 1 and c.omega_eigs == (1,) for c in spec)


def test_synth_random_deterministic():
    a = synth_spectrum("random", seed=7, d1=2, d2=1)
    b = synth_spectrum("random", seed=7, d1=2, d2=1)
    assert a == b
    for c in a:
        assert len(c.phases_grade1) == 2
        assert sorted(c.phases_grade1, key=lambda z: z.imag) == \
            sorted((z.conjugate() for z in c.phases_grade1), key=lambda z: z.imag)
    assert validate_spectrum(a) == []


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), d1=st.integers(0, 3), d2=st.integers(0, 2),
       n=st.integers(0, 6), omega_dim=st.integers(1, 3), closed=st.booleans())
def test_synth_round_trip(tmp_path_factory, seed, d1, d2, n, omega_dim, closed):
    spec = synth_spectrum("random", seed=seed, d1=d1, d2=d2, n_classes=n,
                          omega_dim=omega_dim, closed_omega=closed)
    assert validate_spectrum(spec) == []
    assert spectrum_from_dict(spectrum_to_dict(spec)) == spec
    path = tmp_path_factory.mktemp("rt") / "s.json"
    save_spectrum(spec, path)
    assert load_spectrum(path) == spec


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), scale=st.floats(1.001, 2.0))
def test_mutated_phase_rejected(seed, scale):
    spec = synth_spectrum("random", seed=seed, d1=2, n_classes=2)
    c = spec.classes[0]
    bad = (c.phases_grade1[0] * scale,) + c.phases_grade1[1:]
    mutated = spec.with_classes((PrimitiveClass(c.id, c.length, c.weight, c.omega_eigs, bad),)
                                + spec.classes[1:])
    assert any(c.id in p for p in validate_spectrum(mutated))
