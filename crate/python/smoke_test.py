"""Smoke test for the edimlab extension module.

Build and install first:

    pip install maturin
    maturin develop -m crates/python/Cargo.toml --release
"""

import edimlab


def main():
    g = edimlab.Graph.gnp(12, 0.5, seed=7)
    print(g)

    exact = edimlab.solve(g, mode="edge", method="bnb")
    greedy = edimlab.solve(g, mode="edge", method="greedy")
    assert exact.optimal and exact.size <= greedy.size
    assert edimlab.resolves(g, exact.witness, mode="edge")
    print("edim:", exact)
    print("dim:", edimlab.metric_dimension(g))

    assert edimlab.edge_metric_dimension(edimlab.Graph.cycle(6)) == 2
    assert edimlab.metric_dimension(edimlab.Graph.complete(5)) == 4

    t = edimlab.theory_params(1000, 0.5)
    print("theory:", {k: t[k] for k in ("q", "r", "edim_asym", "dim_asym")})

    est = edimlab.monte_carlo("q", 300, 0.5, 5000, seed=1)
    assert abs(est["p_hat"] - edimlab.q_of(0.5)) <= 4 * est["stderr"] + 0.005
    print("q estimate:", est["p_hat"], "+/-", est["stderr"])

    try:
        edimlab.solve(edimlab.Graph.complete(6), mode="vertex", method="brute", max_size=2)
    except edimlab.CapExceededError as e:
        print("cap exceeded as expected:", e)
    else:
        raise AssertionError("expected CapExceededError")

    print("ok")


if __name__ == "__main__":
    main()
