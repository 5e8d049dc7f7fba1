"""CLI invocations pinned by golden files: (golden name, argv relative to the corpus dir, exit code)."""

GOLDEN = [
    ("algebra_radical_t2", ["algebra", "radical", "t2.alg"], 0),
    ("algebra_levi_t3", ["algebra", "levi", "t3.alg"], 0),
    ("algebra_components_m2m3", ["algebra", "components", "m2m3.alg"], 0),
    ("algebra_onepr_m2", ["algebra", "onepr", "m2.alg"], 0),
    ("algebra_onepr_fm2", ["algebra", "onepr", "fm2.alg"], 0),
    ("algebra_rank_m2m3", ["algebra", "rank", "m2m3.alg"], 0),
    ("algebra_core_n3", ["algebra", "core", "n3.alg"], 0),
    ("algebra_simple_m3", ["algebra", "simple", "m3.alg"], 0),
    ("tower_check_corrupted", ["tower", "check", "corrupted.twr"], 1),
    ("tower_is_conical", ["tower", "is-conical", "conical_fixture.twr"], 0),
    ("tower_is_conical_cond3", ["tower", "is-conical", "cond3_fail.twr"], 1),
    ("tower_profile", ["tower", "profile", "diag_2_4_12.twr"], 0),
    ("verify_nrn_m_infty", ["verify", "not-residually-nilpotent", "m_infty_prefix.twr"], 0),
    ("verify_nrn_nilpotent", ["verify", "not-residually-nilpotent", "nilpotent_chain.twr"], 1),
    ("verify_radical_two_node", ["verify", "radical-avoidance", "two_node.twr", "--node", "1"], 0),
    ("verify_maximal_adversarial", ["verify", "maximal-ideal-avoidance", "adversarial_diagonal.twr", "--node", "3"], 2),
    ("verify_one_perfect_fmn", ["verify", "one-perfect", "fmn_tower.twr"], 0),
]
