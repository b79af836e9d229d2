import pytest
from hypothesis import given, settings, strategies as st

from satgame.families import (
    CycleFamily,
    FamilySpecError,
    certify_k_dense,
    erdos_gallai_bound,
    parse_family,
)

GEOM34 = parse_family("geom:3,4")


class TestParsing:
    @pytest.mark.parametrize(
        "spec,forbidden,allowed",
        [
            ("all-ge:5", [5, 6, 100], [3, 4]),
            ("odd-ge:5", [5, 7, 101], [3, 4, 6, 100]),
            ("odd", [3, 5, 99], [4, 6]),
            ("list:5,7,13", [5, 7, 13], [3, 6, 12, 14]),
            ("geom:3,4", [5, 7, 13, 31, 85], [3, 4, 6, 12, 14, 30, 84]),
        ],
    )
    def test_membership(self, spec, forbidden, allowed):
        fam = parse_family(spec)
        for ell in forbidden:
            assert fam.is_forbidden(ell), (spec, ell)
        for ell in allowed:
            assert not fam.is_forbidden(ell), (spec, ell)

    @pytest.mark.parametrize("bad", ["", "nope", "all-ge:", "all-ge:2", "list:", "list:2", "geom:1,4"])
    def test_rejects_bad_specs(self, bad):
        with pytest.raises(FamilySpecError):
            parse_family(bad)

    def test_length_below_three_errors(self):
        with pytest.raises(ValueError):
            parse_family("odd").is_forbidden(2)

    def test_round_trip_spec_string(self):
        assert str(parse_family("odd-ge:5")) == "odd-ge:5"


class TestNextForbidden:
    def test_examples(self):
        assert GEOM34.next_forbidden(8) == 13
        assert parse_family("odd").next_forbidden(4) == 5
        assert parse_family("list:5,7").next_forbidden(8) is None

    def test_min_forbidden(self):
        assert GEOM34.min_forbidden == 5
        assert parse_family("all-ge:4").min_forbidden == 4
        assert parse_family("odd").min_forbidden == 3

    @settings(max_examples=100, deadline=None)
    @given(
        st.sampled_from(
            ["odd", "odd-ge:5", "odd-ge:9", "all-ge:4", "all-ge:7",
             "list:5,7,13", "geom:3,4", "geom:2,3"]
        ),
        st.integers(min_value=3, max_value=300),
    )
    def test_consistency_with_is_forbidden(self, spec, ell):
        fam = parse_family(spec)
        nxt = fam.next_forbidden(ell)
        if nxt is None:
            assert not any(fam.is_forbidden(x) for x in range(ell, 400))
        else:
            assert fam.is_forbidden(nxt)
            assert not any(fam.is_forbidden(x) for x in range(ell, nxt) if x >= 3)


def brute_condition3(fam: CycleFamily, k: int, horizon: int) -> bool:
    """Direct window check for every 3 <= s <= horizon."""
    for s in range(3, horizon + 1):
        lo, hi = s + 2, 3 + (k - 2) * (s - 2)
        if not any(fam.is_forbidden(ell) for ell in range(max(lo, 3), hi + 1)):
            return False
    return True


class TestDensityCertification:
    def test_geom_family_is_5_dense(self):
        cert = certify_k_dense(GEOM34, k=5, horizon=200)
        assert cert.dense
        assert all(gap.ok for gap in cert.per_gap)
        assert len(cert.per_gap) >= 12

    def test_c3_family_rejected_condition_2(self):
        cert = certify_k_dense(parse_family("odd"), k=5)
        assert not cert.dense
        assert "condition 2" in cert.failure

    def test_odd_ge5_is_5_dense(self):
        fam = parse_family("odd-ge:5")
        assert brute_condition3(fam, 5, 200)
        cert = certify_k_dense(fam, k=5, horizon=200)
        assert cert.dense

    def test_all_ge6_is_6_dense(self):
        cert = certify_k_dense(parse_family("all-ge:6"), k=6, horizon=200)
        assert cert.dense

    def test_k6_requires_c7(self):
        # even-only family misses C_{k+1}
        cert = certify_k_dense(parse_family("list:6,8,10"), k=6)
        assert not cert.dense
        assert "condition 1" in cert.failure

    def test_k5_only_requires_c5(self):
        # 5-dense needs C_5 but not C_6: odd-ge:5 qualifies
        cert = certify_k_dense(parse_family("odd-ge:5"), k=5)
        assert cert.dense

    def test_finite_family_not_dense(self):
        cert = certify_k_dense(parse_family("list:5,7"), k=5, horizon=200)
        assert not cert.dense

    def test_k_below_5_errors(self):
        with pytest.raises(ValueError):
            certify_k_dense(GEOM34, k=4)

    def test_sparse_gap_family_rejected(self):
        # forbidden lengths 5 then 100: window s=6 -> [8, 15] is empty
        cert = certify_k_dense(parse_family("list:5,100"), k=5, horizon=200)
        assert not cert.dense
        assert "condition 3" in cert.failure

    @pytest.mark.parametrize(
        "spec,k",
        [("geom:3,4", 5), ("odd-ge:5", 5), ("all-ge:6", 6), ("all-ge:7", 7)],
    )
    def test_per_gap_agrees_with_brute_force_windows(self, spec, k):
        # the fast per-gap path must agree with direct condition-3 checking
        fam = parse_family(spec)
        cert = certify_k_dense(fam, k=k, horizon=150)
        assert cert.dense == brute_condition3(fam, k, 150) and cert.dense

    def test_monotone_under_added_long_cycles(self):
        # adding a cycle of length >= k keeps a k-dense family dense
        base = parse_family("geom:3,4")
        augmented = parse_family("list:" + ",".join(
            str(x) for x in sorted(set(base.forbidden_up_to(400)) | {6, 50, 200, 399})
        ))
        for s in range(3, 100):
            lo, hi = s + 2, 3 + 3 * (s - 2)
            if hi > 400:
                break
            assert any(augmented.is_forbidden(ell) for ell in range(lo, hi + 1))


class TestErdosGallaiBound:
    def test_paper_value(self):
        assert erdos_gallai_bound(10, 5) == 18

    def test_single_vertex(self):
        assert erdos_gallai_bound(1, 7) == 0

    def test_forest_bound(self):
        assert erdos_gallai_bound(7, 3) == 6

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            erdos_gallai_bound(0, 5)
        with pytest.raises(ValueError):
            erdos_gallai_bound(5, 2)
