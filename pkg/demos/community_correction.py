"""The block-model correction to the PageRank limit.

On a two-community stochastic block model with equal communities, the
degree mixture misses the fact that mass placed on one community tends to
stay there.  The block-aware limit adds a rank-one correction along the
community-contrast direction:

    pi_bar_sbm = alpha/n * 1 + (1 - alpha) * (v + shrink * (v . u) u)

with u the normalized community sign vector and shrink depending on the
damping and the contrast (p - q)/(p + q).  When the preference is spread
evenly the correction vanishes; when it favors one community the
corrected limit is far closer to the truth than the plain mixture.
"""

from prlab import (
    PageRankConfig,
    SbmParams,
    Seed,
    asymptotic_mixture,
    error_report,
    gen_sbm,
    pagerank_power,
    preference_set,
    preference_uniform,
    sbm_equal_closed_form,
)

ALPHA = 0.85


def distances(g, params, v):
    result = pagerank_power(g, v, PageRankConfig(alpha=ALPHA, tol=1e-12))
    to_mixture = error_report(result.vector, asymptotic_mixture(g, v, ALPHA)).tv
    to_block = error_report(result.vector, sbm_equal_closed_form(params, v, ALPHA)).tv
    return to_mixture, to_block


def main():
    print(f"alpha = {ALPHA}, p = 0.1, q = 0.01, equal communities\n")
    print(f"{'n':>6} {'preference':>12} {'tv to mixture':>14} {'tv to block':>12}")
    for k, n in enumerate((512, 1024, 2048, 4096)):
        params = SbmParams(n=n, p=0.1, q=0.01, m=n // 2)
        g = gen_sbm(params, Seed(200, k))
        uniform = preference_uniform(n)
        community = preference_set(n, range(n // 2))
        for label, v in (("uniform", uniform), ("community1", community)):
            to_mixture, to_block = distances(g, params, v)
            print(f"{n:>6} {label:>12} {to_mixture:>14.3e} {to_block:>12.3e}")
    print("\nUnder the uniform preference the correction vanishes and the")
    print("realized-degree mixture is the sharper target.  Under community1")
    print("the mixture stalls near a constant while the block-aware limit")
    print("keeps improving with n.")


if __name__ == "__main__":
    main()
