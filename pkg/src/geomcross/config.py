"""Central tolerance and trial-count defaults for the verification suites.

All suite thresholds live here so they are visible, versioned artifacts;
per-run overrides go through the CLI flags.
"""

DEFAULT_TRIALS = 10_000

# Per-trial deviation bound each suite must stay under.
DEFAULT_TOLERANCES = {
    "cross-ratio": 1e-10,
    "pencil": 1e-9,
    "projection": 1e-9,
    "menelaus": 1e-8,
    "carnot": 1e-7,
    "chasles": 1e-8,
    "butterfly": 1e-8,  # midpoint defect relative to the PQ chord length
    "carnot-n": 1e-6,
}
