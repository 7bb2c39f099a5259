"""lefbench: exact combinatorial workbench for Lefschetz-fibration
Floer rank bookkeeping over punctured discs."""

__version__ = "0.1.0"
