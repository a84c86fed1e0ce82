"""
Entanglement-of-assistance measures and Hamming-weighted polygamy checks.

Overview of a check run:

1.  Build a pure state (states.build from a recipe, states.load_state_file,
    or linalg.haar_random_pure for random campaigns).
2.  Choose a partition: focus subsystem A and ordered partners B_0...B_{N-1}
    (linalg.PartitionSpec.from_cut("A|BC")).
3.  Compute the global-cut measure and the pairwise terms
    (polygamy.CheckInputs, lazily, once per state):
    - tau_a of the global cut, in one of two modes:
        pure-concurrence  C(ψ) = sqrt(2(1 - Tr ρ_A²)),
        block-sum         Σ over local 2x2 subspace pairs of the block
                          assistance terms;
    - pairwise tau_a(ρ_AB_j) as block sums (exact);
    - pairwise E_a(ρ_AB_j) by the roof optimizer (lower bounds, reports
      flagged as tentative);
    - E_a of the global cut, the entropy of ρ_A (exact for pure states).
4.  Sort the pairwise terms in descending order (Hamming-weighted bounds),
    attach weights (2^x - 1)^{w(j)}, (2^x - 1)^j, β^{w(j)} or β^j and
    compare: polygamy.PolygamyReport with lhs, rhs, slack and verdict.
5.  A violated report resting on optimizer lower bounds is recomputed once
    with four times the optimizer restarts before it is reported.

Campaigns (base.RandomCampaign) repeat steps 1-5 over Haar random states
seeded by (master seed, state index), log one JSON report per line and
reduce them into a deterministic summary.

Entities:

    NumericPolicy - every tolerance in one record (policy.py), overridable
    per call, per project (POLYENT_TOLERANCES) or from the command line.

    OptimizerSettings - ensemble size, restarts, sweeps, step tolerance and
    seed of the roof optimizer (roof.py, POLYENT_OPTIMIZER).

    Loggers - console progress and the JSON-lines report file (base.py).

Usage example:
-------------

As a library:

    from polyent import states, polygamy
    from polyent.linalg import PartitionSpec

    psi = states.build(states.parse_recipe('gsd3:0.5,0.5,r6,r6,r6'))
    report = polygamy.run_check('th1', psi, PartitionSpec.from_cut('A|BC'),
                                exponent=1)
    print(report.to_json(indent=2))

As a Django app, add "polyent" to INSTALLED_APPS and optionally:

    POLYENT_DATA_DIR = os.path.join(BASE_DIR, 'polyent')
    POLYENT_TOLERANCES = {'slack': 1e-9}
    POLYENT_OPTIMIZER = {'restarts': 32}
    POLYENT_THREADS = 4

then run:

    python manage.py check_polygamy ...

or, standalone, through the bundled entry point:

    polyent measure --state w3 --measure entropy --cut "A|BC"
    polyent check --state gsd3 --inequality th1 --alpha 1
    polyent sweep-beta --state w3 --out sweep.csv
    polyent campaign --dims 2,2,2 --count 500 --inequalities th1,eq2,eq4
    polyent example
"""

VERSION = (1, 0, 0,)


def get_version():
    return '.'.join(map(str, VERSION))
