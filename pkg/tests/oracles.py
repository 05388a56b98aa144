"""Scalar-loop reference evaluations, written without numpy linear algebra.

These transcribe each formula entry by entry so they share no code path
with the vectorized implementation under test.
"""
import math
from collections import Counter


def mat(A):
    return [[float(x) for x in row] for row in A]


def frob_sq(A, B):
    return sum((a - b) ** 2 for ra, rb in zip(mat(A), mat(B)) for a, b in zip(ra, rb))


def matmul(A, B):
    A, B = mat(A), mat(B)
    r, k, c = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(c)] for i in range(r)]


def collab(F, Gv, Gw):
    F, Gv, Gw = mat(F), mat(Gv), mat(Gw)
    M, K, N = len(F), len(Gv), len(Gv[0])
    total = 0.0
    for m in range(M):
        for n in range(N):
            s = sum(F[m][k] * (Gv[k][n] - Gw[k][n]) for k in range(K))
            total += s * s
    return total


def _gram(F):
    M, K = len(F), len(F[0])
    return [[sum(F[m][i] * F[m][j] for m in range(M)) for j in range(K)] for i in range(K)]


def update_G(v, X, F, G, Gstar, alpha, beta, eps):
    Fv, Gv, Xv, Gs = mat(F[v]), mat(G[v]), mat(X[v]), mat(Gstar)
    M, K, N = len(Fv), len(Gv), len(Gv[0])
    V = len(G)
    FtF = _gram(Fv)
    others = [w for w in range(V) if w != v]
    Gl = [mat(g) for g in G]
    out = [[0.0] * N for _ in range(K)]
    for k in range(K):
        for n in range(N):
            num = sum(Fv[m][k] * Xv[m][n] for m in range(M))
            den = sum(FtF[k][j] * Gv[j][n] for j in range(K))
            for w in others:
                Gw = Gl[w]
                num += alpha[v][w] * sum(FtF[k][j] * Gw[j][n] for j in range(K))
                den += alpha[v][w] * sum(FtF[k][j] * Gv[j][n] for j in range(K))
            num += beta[v] * Gs[k][n]
            den += beta[v] * Gv[k][n]
            out[k][n] = Gv[k][n] * num / (den + eps)
    return out


def update_F(v, X, F, G, alpha, eps, literal=False):
    Fv, Gv, Xv = mat(F[v]), mat(G[v]), mat(X[v])
    M, K, N = len(Fv), len(Gv), len(Gv[0])
    V = len(G)

    def outer(A, B, i, j):
        return sum(A[i][n] * B[j][n] for n in range(N))

    Gl = [mat(g) for g in G]
    out = [[0.0] * K for _ in range(M)]
    for m in range(M):
        for k in range(K):
            num = sum(Xv[m][n] * Gv[k][n] for n in range(N))
            den = sum(Fv[m][j] * outer(Gv, Gv, j, k) for j in range(K))
            for w in range(V):
                if w == v:
                    continue
                Gw = Gl[w]
                a = alpha[v][w]
                # F G Gw^T + F Gw G^T
                num += a * sum(Fv[m][j] * (outer(Gv, Gw, j, k) + outer(Gw, Gv, j, k)) for j in range(K))
                if literal:
                    # F G G^T + F Gw G^T
                    den += a * sum(Fv[m][j] * (outer(Gv, Gv, j, k) + outer(Gw, Gv, j, k)) for j in range(K))
                else:
                    # F G G^T + F Gw Gw^T
                    den += a * sum(Fv[m][j] * (outer(Gv, Gv, j, k) + outer(Gw, Gw, j, k)) for j in range(K))
            out[m][k] = Fv[m][k] * num / (den + eps)
    return out


def update_Gstar(G, Gstar, beta, eps):
    Gs = mat(Gstar)
    K, N = len(Gs), len(Gs[0])
    Gs_list = [mat(g) for g in G]
    out = [[0.0] * N for _ in range(K)]
    for k in range(K):
        for n in range(N):
            num = sum(b * g[k][n] for b, g in zip(beta, Gs_list))
            den = sum(b * Gs[k][n] for b in beta)
            out[k][n] = Gs[k][n] * num / (den + eps)
    return out


def closed_form_weights(values, gamma):
    powered = [math.pow(float(h), 1.0 / (gamma - 1.0)) for h in values]
    total = sum(powered)
    return [p / total for p in powered]


def alpha_matrix(F, G, gamma):
    V = len(G)
    alpha = [[0.0] * V for _ in range(V)]
    for v in range(V):
        others = [w for w in range(V) if w != v]
        H = [collab(F[v], G[v], G[w]) for w in others]
        for w, a in zip(others, closed_form_weights(H, gamma)):
            alpha[v][w] = a
    return alpha


def beta_vector(G, Gstar, gamma):
    return closed_form_weights([frob_sq(g, Gstar) for g in G], gamma)


def contingency_counts(pred, truth):
    return Counter(zip(list(pred), list(truth)))


def purity(pred, truth):
    pairs = contingency_counts(pred, truth)
    total = 0
    for c in set(pred):
        total += max(pairs.get((c, t), 0) for t in set(truth))
    return total / len(pred)


def nmi(pred, truth):
    n = len(pred)
    pairs = contingency_counts(pred, truth)
    cp = Counter(pred)
    ct = Counter(truth)
    hp = -sum(c / n * math.log(c / n) for c in cp.values())
    ht = -sum(c / n * math.log(c / n) for c in ct.values())
    if hp + ht == 0:
        return 0.0
    mi = 0.0
    for (a, b), c in pairs.items():
        mi += c / n * math.log((c / n) / ((cp[a] / n) * (ct[b] / n)))
    return 2 * mi / (hp + ht)
