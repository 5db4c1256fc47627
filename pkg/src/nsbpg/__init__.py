"""Normal-subgroup based power graphs: construction, surface invariants, classification."""

__version__ = "0.1.0"
