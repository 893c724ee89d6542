from kaehleraut.ga import PolyEndo
from kaehleraut.rep import AlphaImage, alpha
from kaehleraut.verify import run_verification


def test_harness_passes():
    report = run_verification(trials=5, seed=1)
    assert report.ok
    assert {r.name for r in report.results} >= {"homomorphism", "inverse", "round_trip", "oracle", "leibniz"}


def test_harness_catches_broken_alpha():
    def broken(phi):
        image = alpha(phi)
        comps = list(image.base.components)
        comps[0] = comps[0].scale(2)
        return AlphaImage(PolyEndo(image.base.n, tuple(comps)), image.source_m, image.source_N)

    report = run_verification(trials=3, seed=1, alpha_fn=broken)
    assert not report.ok
    failed = [r for r in report.results if not r.ok]
    assert any(r.name == "identity" for r in failed)
    assert all(r.counterexample for r in failed)
