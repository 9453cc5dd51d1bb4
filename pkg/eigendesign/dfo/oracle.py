import numpy as np

from eigendesign.utils.rng import stream


class NoisyOracle:
    """
    Function evaluator that returns g(y) + ξ with ξ uniform on [−σ/2, σ/2].

    Noise is drawn from :func:`~eigendesign.utils.rng.stream` keyed by ``(label, rng_seed)``,
    one draw per call, so the i-th call of two oracles with the same keys gets the same ξ.
    True values are logged for assessment only.

    Parameters
    ----------
    g: callable
        True objective, vector to float.
    sigma: :class:`float`, default=0.0
        Width of the noise interval.
    rng_seed: :class:`int`, default=0
        Seed of the noise stream.
    label: :class:`str`, default='oracle'
        Stream label, usually the problem name.

    Examples
    --------

    >>> oracle = NoisyOracle(lambda y: float(y @ y), sigma=0.1, rng_seed=3)
    >>> value = oracle(np.ones(2))
    >>> abs(value - 2) <= 0.05, oracle.calls
    (True, 1)
    >>> oracle.true_values
    [2.0]
    """

    def __init__(self, g, sigma=0.0, rng_seed=0, label="oracle"):
        if sigma < 0:
            raise ValueError(f"Noise level must be nonnegative, got {sigma}.")
        self.g = g
        self.sigma = float(sigma)
        self.rng_seed = int(rng_seed)
        self.label = label
        self.reset()

    def reset(self):
        """Rewind the noise stream and forget past calls."""
        self._rng = stream(self.label, self.rng_seed)
        self.calls = 0
        self.true_values = []

    def true_value(self, y):
        """Noiseless value, not counted as a call."""
        return float(self.g(np.asarray(y, dtype=float)))

    def __call__(self, y):
        value = self.true_value(y)
        xi = self.sigma * (self._rng.uniform() - 0.5)
        self.calls += 1
        self.true_values.append(value)
        return value + xi

    def __repr__(self):
        return f"NoisyOracle(label='{self.label}', sigma={self.sigma}, rng_seed={self.rng_seed}, calls={self.calls})"
