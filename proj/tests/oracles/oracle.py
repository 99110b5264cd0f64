"""Independent reference values, computed with numpy from first principles.

Run from the repository root:  python3 tests/oracles/oracle.py
Writes tests/oracles/frozen.json, which the C++ suites read.
"""
import itertools
import json
import math
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parents[2]


def load_system(path):
    j = json.loads((ROOT / path).read_text())
    names = j["alphabet"]
    inv = {}
    for x, y in j["involution"]:
        inv[x], inv[y] = y, x
    dims = {a: j["dims"][a] for a in names}
    H = {}
    for b in names:
        for a in names:
            H[b, a] = np.zeros((dims[b], dims[a]), dtype=complex)
    for key, rows in j.get("maps", {}).items():
        b, a = key.split("|")
        m = np.array([[complex(*e) if isinstance(e, list) else e for e in r] for r in rows], dtype=complex)
        H[b, a] = m
    return names, inv, dims, H


def transfer_matrix(names, dims, H):
    """Matrix of B -> (a -> sum_b H_ba^* B_b H_ba) on the stacked entries."""
    blocks = [(a, dims[a]) for a in names]
    off, pos = {}, 0
    for a, d in blocks:
        off[a] = pos
        pos += d * d
    T = np.zeros((pos, pos), dtype=complex)
    for b in names:
        for k in range(dims[b] * dims[b]):
            E = np.zeros(dims[b] * dims[b], dtype=complex)
            E[k] = 1
            Bb = E.reshape(dims[b], dims[b])
            for a in names:
                out = H[b, a].conj().T @ Bb @ H[b, a]
                T[off[a]:off[a] + dims[a] ** 2, off[b] + k] += out.reshape(-1)
    return T, off


def perron(names, dims, H):
    T, off = transfer_matrix(names, dims, H)
    w, V = np.linalg.eig(T)
    i = int(np.argmax(np.abs(w)))
    rho = float(np.abs(w[i]))
    v = V[:, i]
    B = {a: v[off[a]:off[a] + dims[a] ** 2].reshape(dims[a], dims[a]) for a in names}
    tr = sum(np.trace(B[a]) for a in names)
    total = sum(dims.values())
    B = {a: (B[a] / tr) * total for a in names}
    B = {a: (B[a] + B[a].conj().T) / 2 for a in names}
    return rho, B


def reduce_word(w, inv):
    out = []
    for x in w:
        if out and out[-1] == inv[x]:
            out.pop()
        else:
            out.append(x)
    return out


def parse(s, names):
    if s in ("", "e"):
        return []
    out, i = [], 0
    while i < len(s):
        best = max((n for n in names if s.startswith(n, i)), key=len)
        out.append(best)
        i += len(best)
    return out


def sphere(names, inv, r):
    if r == 0:
        return [[]]
    words = [[a] for a in names]
    for _ in range(r - 1):
        words = [w + [c] for w in words for c in names if c != inv[w[-1]]]
    return words


class Vector:
    def __init__(self, names, inv, H, depth, values):
        self.names, self.inv, self.H, self.depth, self.values = names, inv, H, depth, values

    def __call__(self, w):
        """f(w) for |w| >= depth by f(xb) = H_{b,last(x)} f(x)."""
        v = self.values.get(tuple(w[: self.depth]))
        if v is None:
            return None
        for k in range(self.depth, len(w)):
            v = self.H[w[k], w[k - 1]] @ v
        return v


def load_vector(path, names, inv, dims, H):
    j = json.loads((ROOT / path).read_text())
    vals = {}
    for word, entries in j["values"].items():
        w = tuple(parse(word, names))
        vals[w] = np.array([complex(*e) if isinstance(e, list) else e for e in entries], dtype=complex)
    return Vector(names, inv, H, j["depth"], vals)


def coefficient(x, f, g, B):
    """<pi(x) f, g> = sum_{|y|=M} g(y)^H B f(x^{-1} y) at M = depth + |x| + 1."""
    names, inv = f.names, f.inv
    M = max(f.depth, g.depth) + len(x) + 1
    xinv = [inv[c] for c in reversed(x)]
    s = 0j
    for y in sphere(names, inv, M):
        gy = g(y)
        if gy is None:
            continue
        fy = f(reduce_word(xinv + y, inv))
        if fy is None:
            continue
        s += np.vdot(gy, B[y[-1]] @ fy)
    return s


def scaled(names, H, rho):
    return {k: v / math.sqrt(rho) for k, v in H.items()}


def cplx(z):
    return [float(np.real(z)), float(np.imag(z))]


def schreier_index2(images):
    """Reidemeister-Schreier for F2 -> Z/2, literally from the definitions."""
    names = ["a", "A", "b", "B"]
    inv = {"a": "A", "A": "a", "b": "B", "B": "b"}
    img = {k: v % 2 for k, v in images.items()}

    def coset(w):
        return sum(img[c] for c in w) % 2

    D = [[]] + [[c] for c in names if img[c] == 1][:1]
    rep = {coset(u): u for u in D}
    gens = set()
    for u in D:
        for a in names:
            w = reduce_word(u + [a] + [inv[c] for c in reversed(rep[coset(u + [a])])], inv)
            if w:
                gens.add("".join(w))
    P = {a: set() for a in names}
    pairs = {a: 0 for a in names}
    for u in D:
        for g in gens:
            w = reduce_word([inv[c] for c in reversed(u)] + list(parse(g, names)), inv)
            if w:
                P[w[0]].add("".join(w))
                pairs[w[0]] += 1
    return {
        "transversal": ["".join(u) or "e" for u in D],
        "generators": sorted(gens, key=lambda s: (len(s), [names.index(c) for c in s])),
        "P": {a: sorted(P[a], key=lambda s: (len(s), [names.index(c) for c in s])) for a in names},
        "pair_counts": pairs,
    }


def main():
    out = {}
    names, inv, dims, H = load_system("data/spherical-unscaled.json")
    rho, _ = perron(names, dims, H)
    out["spherical_unscaled_rho"] = rho

    names, inv, dims, H = load_system("data/spherical.json")
    B = {a: np.eye(1) for a in names}
    f = load_vector("data/spherical-vector.json", names, inv, dims, H)
    out["spherical_coefficients"] = {w: cplx(coefficient(parse(w, names), f, f, B)) for w in ["e", "a", "b", "aa", "ab", "Ab"]}

    names, inv, dims, H = load_system("data/random-rank2.json")
    rho, B = perron(names, dims, H)
    Hs = scaled(names, H, rho)
    f = load_vector("data/random-vector.json", names, inv, dims, Hs)
    out["random_rho"] = rho
    out["random_forms_trace"] = {a: float(np.real(np.trace(B[a]))) for a in names}
    out["random_coefficients"] = {
        w: cplx(coefficient(parse(w, names), f, f, B)) for w in ["e", "a", "B", "bA", "abAB", "aabb"]
    }

    out["index2_a"] = schreier_index2({"a": 1, "A": 1, "b": 0, "B": 0})
    out["index2_b"] = schreier_index2({"a": 0, "A": 0, "b": 1, "B": 1})

    # spherical measure of cylinders for the seed at a: mass 3^{1-|z|} on
    # the cone of a, by direct summation of |f|^2 over the sphere.
    names, inv, dims, H = load_system("data/spherical.json")
    f = load_vector("data/spherical-vector.json", names, inv, dims, H)
    mu = {}
    for z in ["a", "b", "aa", "ab", "aB", "aab"]:
        zw = parse(z, names)
        R = max(len(zw), 1)
        s = 0.0
        for y in sphere(names, inv, R):
            if y[: len(zw)] == zw:
                v = f(y)
                if v is not None:
                    s += float(np.real(np.vdot(v, v)))
        mu[z] = s
    out["spherical_measure"] = mu

    path = ROOT / "tests" / "oracles" / "frozen.json"
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print("wrote", path)


if __name__ == "__main__":
    main()
