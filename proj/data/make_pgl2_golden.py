"""Writes pgl2_golden.json: the rank-one closed forms as expressions plus exact samples.

Matrices use s with t = s^2. Run from this directory: python3 make_pgl2_golden.py
"""
import json
from fractions import Fraction as Q

def inv(x):
    return 1 / x

FORMS = {
    "ev_hat_1": {
        "word": "1", "coordinates": ["x0", "t"],
        "expression": [["s+s^-1", "-x0 s^-1"], ["x0^-1 s", "0"]],
        "f": lambda a, s: [[s + inv(s), -a * inv(s)], [inv(a) * s, Q(0)]],
    },
    "ev_hat_bar1_1": {
        "word": "-1,1", "also": ["-1,-1"], "coordinates": ["y0", "y1", "t"],
        "expression": [["s^-1 (1+y1) + s", "-y0 y1 s^-1"],
                       ["y0^-1 (s (1+y1^-1) + s^-1 (1+y1))", "-y1 s^-1"]],
        "f": lambda a, b, s: [[inv(s) * (1 + b) + s, -a * b * inv(s)],
                              [inv(a) * (s * (1 + inv(b)) + inv(s) * (1 + b)), -b * inv(s)]],
    },
    "ev_hat_1_bar1_displayed": {
        "word": "1,-1", "class": "shared with -1,1", "coordinates": ["y0~", "y1~", "t"],
        "expression": [["s^-1 (1+y1~^-1) + s", "-s^-1 y0~ (1+y1~^-1)"],
                       ["y0~^-1 (s + s^-1 y1~^-1)", "-y1~^-1 s"]],
        "determinant_one": False,
        "f": lambda a, b, s: [[inv(s) * (1 + inv(b)) + s, -inv(s) * a * (1 + inv(b))],
                              [inv(a) * (s + inv(s) * inv(b)), -inv(b) * s]],
    },
    "ev_hat_1_1": {
        "word": "1,1", "also": ["1,-1"], "coordinates": ["z0", "z1", "t"],
        "expression": [["(1+z1^-1) s + s^-1", "-z0 ((1+z1^-1) s + (1+z1) s^-1)"],
                       ["z0^-1 z1^-1 s", "-z1^-1 s"]],
        "f": lambda a, b, s: [[(1 + inv(b)) * s + inv(s), -a * ((1 + inv(b)) * s + (1 + b) * inv(s))],
                              [inv(a) * inv(b) * s, -inv(b) * s]],
    },
}

MAPS = {
    "xi_s1": {
        "word": "-1,1", "coordinates": ["y0", "y1", "t"],
        "expression": ["y0 (1+y1^-1)^-1 (1+y1^-1 t)^-1", "y1^-1 t", "t"],
        "f": lambda a, b, t: [a * inv(1 + inv(b)) * inv(1 + inv(b) * t), inv(b) * t, t],
    },
    "artin_T1": {
        "word": "1,1", "coordinates": ["z0", "z1", "t"],
        "expression": ["z0^-1 (1+z1^-1)^-1 (1+z1^-1 t)^-1", "z1^-1 t", "t"],
        "f": lambda a, b, t: [inv(a) * inv(1 + inv(b)) * inv(1 + inv(b) * t), inv(b) * t, t],
    },
    "artin_T1_squared_displayed": {
        "word": "1,1", "coordinates": ["z0", "z1", "t"],
        "expression": ["z0 z1^-2 t^2", "z1", "t"],
        "f": lambda a, b, t: [a * inv(b * b) * t * t, b, t],
    },
}

ETA = {
    "1,1": [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
    "1,-1": [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
    "-1,1": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    "-1,-1": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
}

BRACKETS = {
    "t11,t12": "t12 t22", "t11,t21": "-t21 t22", "t11,t22": "0",
    "t12,t21": "t11 t22 - t22^2", "t12,t22": "t12 t22", "t21,t22": "-t21 t22",
}

POINTS2 = [(Q(2), Q(3)), (Q(3, 2), Q(2, 7)), (Q(-4), Q(5, 3))]
POINTS3 = [(Q(2), Q(3), Q(5)), (Q(3, 2), Q(5, 7), Q(2)), (Q(-4), Q(1, 3), Q(3, 5))]

def s_str(x):
    return str(x)

def main():
    out = {"convention": "matrices in s with t = s^2; samples give exact values at points (coordinates..., s) "
                         "for matrices and (coordinates..., t) for maps",
           "ev_hat": {}, "maps": {}, "eta": ETA, "bracket_table": BRACKETS}
    for name, f in FORMS.items():
        entry = {k: v for k, v in f.items() if k != "f"}
        pts = POINTS2 if len(f["coordinates"]) == 2 else POINTS3
        entry["samples"] = [{"point": [s_str(v) for v in p],
                             "matrix": [[s_str(v) for v in row] for row in f["f"](*p)]} for p in pts]
        out["ev_hat"][name] = entry
    for name, f in MAPS.items():
        entry = {k: v for k, v in f.items() if k != "f"}
        entry["samples"] = [{"point": [s_str(v) for v in p], "image": [s_str(v) for v in f["f"](*p)]} for p in POINTS3]
        out["maps"][name] = entry
    with open("pgl2_golden.json", "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")

if __name__ == "__main__":
    main()
