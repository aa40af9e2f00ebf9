//! Short descriptions of family members and suites.

use crate::config::UsageError;

struct Entry {
    pattern: &'static str,
    text: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry {
        pattern: "thimm",
        text: "thimm(k,m): m-th eigenvalue, in the chamber order 0 >= mu_1 >= ... >= mu_N, of the leading \
               N x N block Y of X with N = n - k. Casimirs of the nested subgroup U(N,H), hence Poisson-commuting.",
    },
    Entry {
        pattern: "g_last",
        text: "g_last(k): i-component of Y_NN for the leading N x N block Y, N = n - k. A moment map component \
               of the circle acting on the last coordinate.",
    },
    Entry {
        pattern: "g",
        text: "g(k,m): |b_{N,m}|^2 where Y = B D_mu B* is the leading N x N block (N = n - k) and m < N. Torus \
               independent, and 0 <= g <= 1 with sum_m |b_{N,m}|^2 = 1.",
    },
    Entry {
        pattern: "f",
        text: "f(k,m) = rtr(Y^{2m} E_NN) = 2 sum_l (-1)^m mu_l^{2m} |b_{N,l}|^2 for the leading N x N block Y. \
               Polynomial in X; determines the g's when the |mu_l| are distinct.",
    },
    Entry {
        pattern: "commute",
        text: "commute: maximum |{f_i, f_j}| over all member pairs at random points of a generic orbit, with \
               {f, g}(X) = rtr(X [grad f, grad g]) and central-difference gradients in <X, Y> = -rtr(XY).",
    },
    Entry {
        pattern: "independence",
        text: "independence: numerical rank of the Hamiltonian vectors [X, grad f_i]; n^2 singular values above \
               1e-6 sigma_max at every sampled point means half the orbit dimension.",
    },
    Entry {
        pattern: "reduced",
        text: "reduced: level-0 members are unchanged by conjugation with diag(U', 1), U' in U(n-1,H); the 1x1 \
               Thimm value must move (control). Also checks rtr vs eigen-sum forms, odd corner traces and unit rows.",
    },
    Entry {
        pattern: "patterns",
        text: "patterns: integer pattern counts against Weyl dimensions: gl for n <= 4 with entries in [0,4], sp \
               for n <= 3 with entries in [-3,0].",
    },
    Entry {
        pattern: "factorize",
        text: "factorize: solves Phi_m = sum_{k+l=m} (-1)^l C_k^t Q C_l order by order, Y_m = Q C_m with \
               Y_m = -R_m/2 (m odd) or R_m/2 (m even), the homogeneous part set to zero.",
    },
    Entry {
        pattern: "stabilizer",
        text: "stabilizer: A(u) tau(A(-u)) = 1, sigma(A) = A and (A^{-1})^t Q A(-u)^{-1} = Q must agree on \
               sampled stabilizer elements and random pointed series.",
    },
    Entry {
        pattern: "limits",
        text: "limits: the h-families of g(u)-multiplication and shifting reduce to the identity at h = 0 and \
               move by O(h); inversion and bar-tau do not depend on h. Polynomial images match the series maps.",
    },
    Entry {
        pattern: "psi",
        text: "psi: corners of sum X^M u^{-M} equal corners of (1 - X u^{-1})^{-1}, are unchanged by the smaller \
               symplectic group, and match the quaternion entries (X^M)_nn.",
    },
    Entry {
        pattern: "pullback",
        text: "pullback: s_{-1,-1} + s_{1,1} of the corner series = 2 Re (X^M)_nn = rtr(X^M E_nn), zero for odd M.",
    },
    Entry {
        pattern: "poisson",
        text: "poisson: {z_ij^(M), z_kl^(N)} = sum_{r<min(M,N)} (z_kj^(r) z_il^(M+N-1-r) - z_kj^(M+N-1-r) z_il^(r)); \
               antisymmetry, Jacobi and multiplicativity under the group law.",
    },
];

fn head(label: &str) -> &str {
    label.split('(').next().unwrap_or(label).trim()
}

pub fn known_labels() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.pattern).collect()
}

/// Description for a member label such as `f(0,1)` or a suite name.
pub fn explain(label: &str) -> Result<String, UsageError> {
    let key = head(label);
    if let Some(e) = ENTRIES.iter().find(|e| e.pattern == key) {
        return Ok(e.text.split_whitespace().collect::<Vec<_>>().join(" "));
    }
    let suggestions: Vec<&str> = known_labels()
        .into_iter()
        .filter(|k| k.starts_with(key.chars().next().unwrap_or(' ')) || key.contains(k))
        .collect();
    let list = if suggestions.is_empty() { known_labels() } else { suggestions };
    Err(UsageError(format!("unknown label {label:?}; known: {}", list.join(", "))))
}
