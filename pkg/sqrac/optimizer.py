"""
Copyright 2024 binary butterfly GmbH
Use of this source code is governed by an MIT-style license that can be found in the LICENSE.txt.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from decouple import config
from scipy.optimize import brentq

from common.exceptions import InvalidParameterException
from common.models import Branch, OptimalSetting, RegionPoint, RegionScan, SuccessReport
from sqrac.protocol import QUARTER_PI, p_ab_formula, p_abc_formula, p_ac_formula, transverse_sum

CLASSICAL_BOUND = 0.75
ALPHA_TOLERANCE = 1e-10


def _best_beta(alpha, eta0, eta1):
    transverse = transverse_sum(eta0, eta1)
    cos_sq, sin_sq = np.square(np.cos(alpha)), np.square(np.sin(alpha))
    return np.clip(np.arctan2(2 * sin_sq + transverse * cos_sq, 2 * cos_sq + transverse * sin_sq), 0, QUARTER_PI)


def best_beta(alpha: float, eta0: float, eta1: float) -> float:
    """
    Charlie's angle maximising P_AC at fixed alpha. P_AC is A cos β + B sin β up to constants, so the maximum sits at
    tan β = B / A, which never leaves [0, π/4] while alpha ≤ π/4.
    """
    return float(_best_beta(alpha, eta0, eta1))


def _maximin_gap(alpha, eta0, eta1):
    return p_ab_formula(eta0, eta1, alpha) - p_ac_formula(eta0, eta1, alpha, _best_beta(alpha, eta0, eta1))


def _optimal_angles(eta0: np.ndarray, eta1: np.ndarray, tolerance: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Elementwise maximin search. Returns alpha, beta and a mask of points on the unbiased branch.

    The gap P_AB - max_β P_AC grows monotonically in alpha, is non-positive at alpha = 0 and positive at π/4 on the
    optimized branch, so a plain bisection brackets the equality point.
    """
    unbiased = p_ab_formula(eta0, eta1, QUARTER_PI) <= p_ac_formula(eta0, eta1, QUARTER_PI, QUARTER_PI)

    low = np.zeros_like(eta0, dtype=float)
    high = np.full_like(eta0, QUARTER_PI, dtype=float)
    # only reachable for eta0 = eta1 = 1, where the maximin sits on the alpha = 0 edge
    pinned = _maximin_gap(low, eta0, eta1) >= 0

    while np.max(high - low, initial=0.0) > tolerance:
        middle = (low + high) / 2
        positive = _maximin_gap(middle, eta0, eta1) > 0
        high = np.where(positive, middle, high)
        low = np.where(positive, low, middle)

    alpha = np.where(pinned, 0.0, (low + high) / 2)
    alpha = np.where(unbiased, QUARTER_PI, alpha)
    beta = np.where(unbiased, QUARTER_PI, _best_beta(alpha, eta0, eta1))
    return alpha, beta, unbiased


def _region_points(eta0: np.ndarray, eta1: np.ndarray, tolerance: float) -> list[RegionPoint]:
    alpha, beta, unbiased = _optimal_angles(eta0, eta1, tolerance)
    p_ab = p_ab_formula(eta0, eta1, alpha)
    p_ac = p_ac_formula(eta0, eta1, alpha, beta)
    p_abc = p_abc_formula(eta0, eta1, alpha, beta)

    points: list[RegionPoint] = []
    for index in range(len(eta0)):
        branch = Branch.UNBIASED if unbiased[index] else Branch.OPTIMIZED
        points.append(
            RegionPoint(
                eta0=float(eta0[index]),
                eta1=float(eta1[index]),
                setting=OptimalSetting(
                    eta0=float(eta0[index]),
                    eta1=float(eta1[index]),
                    alpha=float(alpha[index]),
                    beta=float(beta[index]),
                    p_equal=float(min(p_ab[index], p_ac[index])),
                    branch=branch,
                ),
                report=SuccessReport(p_ab=float(p_ab[index]), p_ac=float(p_ac[index]), p_abc=float(p_abc[index]), branch=branch),
            ),
        )
    return points


def optimize(eta0: float, eta1: float, tolerance: float = ALPHA_TOLERANCE) -> OptimalSetting:
    return _region_points(np.array([eta0], dtype=float), np.array([eta1], dtype=float), tolerance)[0].setting


def optimize_many(pairs: list[tuple[float, float]], tolerance: float = ALPHA_TOLERANCE) -> list[RegionPoint]:
    if not pairs:
        return []
    etas = np.array(pairs, dtype=float)
    return _region_points(etas[:, 0], etas[:, 1], tolerance)


def unbiased_violation_interval() -> tuple[float, float]:
    """
    Equal-sharpness interval in which both decoders beat the classical bound with mutually unbiased measurements.
    """
    lower = brentq(lambda eta: p_ab_formula(eta, eta, QUARTER_PI) - CLASSICAL_BOUND, 0.0, 1.0, xtol=1e-15)
    upper = brentq(lambda eta: p_ac_formula(eta, eta, QUARTER_PI, QUARTER_PI) - CLASSICAL_BOUND, lower, 1.0, xtol=1e-15)
    return float(lower), float(upper)


def _row_crossings(etas: np.ndarray, values: np.ndarray) -> list[float]:
    """
    Linearly interpolated positions along one grid row where `values` crosses the classical bound.
    """
    crossings: list[float] = []
    above = values >= CLASSICAL_BOUND
    for index in range(len(etas) - 1):
        if above[index] == above[index + 1]:
            continue
        weight = (CLASSICAL_BOUND - values[index]) / (values[index + 1] - values[index])
        crossings.append(float(etas[index] + weight * (etas[index + 1] - etas[index])))
    return crossings


def _boundary(scan: RegionScan) -> list[tuple[float, float]]:
    etas = np.array(scan.etas)
    minima = np.array([point.report.minimum for point in scan.points]).reshape(scan.grid, scan.grid)

    found: set[tuple[float, float]] = set()
    for row_index, eta0 in enumerate(etas):
        for eta1 in _row_crossings(etas, minima[row_index]):
            # the grid is symmetric, so column crossings are the reflected row crossings
            found.add((round(float(eta0), 12), round(eta1, 12)))
            found.add((round(eta1, 12), round(float(eta0), 12)))
    if not found:
        return []

    inside = [(point.eta0, point.eta1) for point in scan.points if point.violation]
    if inside:
        center = np.mean(np.array(inside), axis=0)
    else:
        center = np.mean(np.array(sorted(found)), axis=0)
    return sorted(found, key=lambda point: (math.atan2(point[1] - center[1], point[0] - center[0]), point))


def scan_region(grid: Optional[int] = None, workers: Optional[int] = None, tolerance: float = ALPHA_TOLERANCE) -> RegionScan:
    grid = grid or config('SQRAC_GRID', default=241, cast=int)
    workers = workers or config('SQRAC_WORKERS', default=1, cast=int)
    if grid < 2:
        raise InvalidParameterException(uid='grid', message=f'grid resolution {grid} is below 2')

    etas = np.linspace(0.0, 1.0, grid)

    def scan_row(eta0: float) -> list[RegionPoint]:
        return _region_points(np.full(grid, eta0), etas, tolerance)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(scan_row, etas))

    scan = RegionScan(grid=grid, etas=[float(eta) for eta in etas], points=[point for row in rows for point in row])
    scan.boundary = _boundary(scan)
    return scan
