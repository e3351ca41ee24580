"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def as_vector(values, dimension: int | None = None) -> np.ndarray:
    """Coerce to a finite 1-D float64 array, optionally checking its length."""
    vec = np.asarray(values, dtype=np.float64)
    if vec.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {vec.shape}")
    if vec.size < 1:
        raise ValueError("vector must have at least one component")
    if not np.all(np.isfinite(vec)):
        raise ValueError("vector contains NaN or infinite components")
    if dimension is not None and vec.size != dimension:
        raise ValueError(f"expected dimension {dimension}, got {vec.size}")
    return vec


def check_same_dimension(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def check_probability_entries(entries) -> list[tuple[str, float]]:
    """Validate (label, prob) pairs: nonnegative, unique labels, mass <= 1."""
    checked: list[tuple[str, float]] = []
    seen: set[str] = set()
    total = 0.0
    for label, prob in entries:
        if not isinstance(label, str) or not label:
            raise ValueError("class labels must be non-empty strings")
        if label in seen:
            raise ValueError(f"duplicate class label: {label!r}")
        seen.add(label)
        prob = float(prob)
        if not np.isfinite(prob) or prob < 0.0:
            raise ValueError(f"probability for {label!r} must be finite and >= 0")
        total += prob
        checked.append((label, prob))
    if total > 1.0 + 1e-6:
        raise ValueError(f"probabilities sum to {total:.6f} > 1")
    return checked
