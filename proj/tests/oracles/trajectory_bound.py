"""Analytic-circle + dense least-squares bound for the R=500 trajectory check.

Both lane boundaries of a single 3.75 m lane on a right-hand arc are exact
circles in the sensor frame. Cubics are fitted to each boundary by dense
least squares (numpy lstsq, 10x the 13-point density) over the sensed x-range
and the mean of the two is compared with the analytic lane centerline at the
1 m ground-truth stations. The printed bound is frozen in the acceptance suite.
"""
import numpy as np

R = 500.0
HALF_WIDTH = 3.75 / 2
X_LO, X_HI = 5.52, 5.52 + 2.0 * 99  # first and last sensed grid stations
PREVIEW = 200.0


def boundary(x, d):
    # right-hand curve, centre of curvature at (0, -R); boundary at lateral offset d
    return -R + np.sqrt((R + d) ** 2 - x ** 2)


def lstsq_cubic(x, y):
    a = np.vander(x, 4)
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    return np.poly1d(coef)


def bound(samples):
    x = np.linspace(X_LO, X_HI, samples)
    left = lstsq_cubic(x, boundary(x, HALF_WIDTH))
    right = lstsq_cubic(x, boundary(x, -HALF_WIDTH))
    gt_x = np.arange(0.0, PREVIEW + 0.5, 1.0)
    gt_x = gt_x[(gt_x >= X_LO) & (gt_x <= min(X_HI, PREVIEW))]
    centre = 0.5 * (left(gt_x) + right(gt_x))
    return np.max(np.abs(centre - boundary(gt_x, 0.0)))


if __name__ == "__main__":
    print("dense (130 samples):", bound(130))
    print("13 samples        :", bound(13))
