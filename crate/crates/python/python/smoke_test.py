"""Smoke test for the artin_py extension."""

import artin_py


def main():
    t = artin_py.build_triple(3, 5)
    assert t["ord_p"] == 21 and t["ord_p_predicted"] == 21
    assert t["min_uv_ord"] == 7 and t["factorization_holds"]
    residual = t["u"] * t["u"] - t["z"] * t["v"] * t["v"]
    assert residual.ord() == 21

    s = artin_py.square_obstruction(4, "F5")
    assert s["max_order"] == 4
    assert str(s["best_t"]) == "T1"

    rows = artin_py.dioph([3], [3, 4, 5])
    assert [r[3] for r in rows] == [4, 5, 6]

    assert artin_py.beta_lower_bound(10) == ("31", True)

    est = artin_py.artin_estimate("X^2 - T*Y^2", 1, jet_order=4, oracle="origin")
    assert est["beta_exact"] == 3 and est["exact_flag"]

    f = artin_py.Series.parse("1 + T1 + T2^2")
    g = f.invert_unit(6)
    assert (f * g).truncate(6) == artin_py.Series.parse("1").truncate(6)

    try:
        artin_py.build_triple(2, 5)
    except artin_py.ArtinError:
        pass
    else:
        raise AssertionError("p = 2 accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
