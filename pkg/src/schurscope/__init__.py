"""schurscope: rational functions that permute the projective line modulo
infinitely many primes -- exact construction, empirical prime sweeps, and the
permutation-group criteria behind them."""

__version__ = "0.1.0"
