import math

import pytest

import zetadyn as zd


def test_maps_and_fixed_points():
    value, derivative = zd.eval_map(1.0, zd.AppendixParams(alpha=0.0))
    assert value == pytest.approx(0.75)
    assert derivative == pytest.approx(0.25)

    p = zd.ElectricalParams(r=0.7)
    roots = zd.find_fixed_points(p, 0.5, 3.0)
    best = min(roots, key=lambda fp: abs(fp.x_star - 1.54574))
    assert abs(best.x_star - 1.54574) < 5e-4
    assert best.stability == "repelling"
    lam = zd.lyapunov_exponent(p, best.x_star, 16, 0)
    assert lam == pytest.approx(math.log(abs(best.multiplier)), abs=1e-6)


def test_orbit_spectrum_energy():
    orbit = zd.generate_orbit(zd.ElectricalParams(r=0.8, R=1.0, L=1.5, C=0.5), 0.1, 1000, 0)
    assert orbit.completed and orbit.status == "completed"
    assert orbit.samples[0] == pytest.approx(65.0 / 3.0, abs=1e-12)
    pts = zd.attractor_embedding(orbit)
    assert all(abs(y * y + z * z - 1.0) < 1e-12 for _, y, z in pts)

    freqs, power = zd.power_spectrum([0.8, 1.9] * 64, remove_mean=True)
    assert freqs[max(range(len(power)), key=power.__getitem__)] == 0.5

    series = zd.energy_series(orbit, zd.ElectricalParams(r=0.8, R=1.0, L=1.5, C=0.5))
    assert len(series["transfer_rate"]) == len(orbit.samples) - 1


def test_scan_is_worker_independent():
    p = zd.ElectricalParams()
    one = zd.parameter_scan(p, 0.5, 0.95, 19, workers=1)
    many = zd.parameter_scan(p, 0.5, 0.95, 19, workers=4)
    assert one == many
    assert set(one["status"]) == {"completed"}


def test_eigen_and_number_theory():
    r = zd.eigensolve(n_points=300, k=3)
    assert r["method"] == "dense"
    assert all(abs(e.imag) < 1e-10 for e in r["eigenvalues"])
    assert all(res < 1e-8 for res in r["residual_norms"])
    assert zd.von_mangoldt(8) == pytest.approx(math.log(2))
    assert zd.von_mangoldt(12) == 0.0
    assert zd.pair_correlation_g(0.5) == pytest.approx(1 - 4 / math.pi**2, abs=1e-12)
    assert zd.pair_correlation_R2(1.0) == pytest.approx(3 / math.pi, abs=1e-12)


def test_errors_map_to_python():
    with pytest.raises(zd.InvalidInput):
        zd.generate_orbit(zd.ElectricalParams(), 0.0, 10, 0)
    with pytest.raises(ValueError):
        zd.generate_orbit(zd.ElectricalParams(r=-1.0), 1.2, 10, 0)
    with pytest.raises(zd.DomainError):
        zd.eigensolve(potential="yitang", x_min=0.5, x_max=2.0, n_points=9, k=1, alpha=0.75)


def test_cli_entry(tmp_path):
    out = tmp_path / "pc.csv"
    code, stdout, stderr = zd.run_cli(["pair-correlation", "--steps", "5", "--out", str(out)])
    assert code == 0, stderr
    assert out.read_text().splitlines()[0] == "u,g,r2"
    assert (tmp_path / "pc.manifest").exists()
    code, _, stderr = zd.run_cli(["orbit", "--x0", "0", "--out", str(tmp_path / "o.csv")])
    assert code == 2 and "singularity guard" in stderr
