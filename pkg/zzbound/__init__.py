"""
zzbound: quantum Ziv-Zakai lower bounds on Bayesian phase-estimation error.

The main entry points are ``zzbound.bounds.evaluate_bound`` for single
bounds and ``zzbound.analysis.scan_t0`` for regime scans.
"""

__version__ = "0.1.0"
