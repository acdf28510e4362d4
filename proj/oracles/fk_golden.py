"""Golden probe poses from the homogeneous link chain, evaluated with numpy.

Prints C++ initialisers consumed by tests/test_kinematics.cpp.
"""
import numpy as np

D1, L1, L2, D4, D6 = 170.0, 65.0, 305.0, 222.0, 70.0


def rz(t):
    c, s = np.cos(t), np.sin(t)
    m = np.eye(4)
    m[:2, :2] = [[c, -s], [s, c]]
    return m


def ry(t):
    c, s = np.cos(t), np.sin(t)
    m = np.eye(4)
    m[0, 0], m[0, 2], m[2, 0], m[2, 2] = c, s, -s, c
    return m


def tr(x, y, z):
    m = np.eye(4)
    m[:3, 3] = [x, y, z]
    return m


def chain(q):
    q = np.radians(q)
    return (rz(q[0]) @ tr(0, 0, D1) @ tr(L1, 0, 0) @ ry(q[1]) @ tr(0, 0, L2) @ ry(q[2])
            @ tr(0, 0, D4) @ rz(q[3]) @ ry(q[4]) @ rz(q[5]) @ tr(0, 0, D6))


CASES = [
    [0, 0, 0, 0, 0, 0],
    [90, 0, 0, 0, 0, 0],
    [0, 90, 0, 0, 0, 0],
    [0, 45, 90, 0, 45, 0],
    [30, 60, 100, -40, 70, 15],
    [-120, 10, 150, 170, -100, -170],
]

for q in CASES:
    t = chain(q)
    vals = ", ".join(repr(float(v)) for v in list(t[:3, 3]) + list(t[:3, :3].ravel()))
    print("    {{%s}, {%s}}," % (", ".join(str(x) for x in q), vals))
