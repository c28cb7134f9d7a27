#include "quatlab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace quatlab {

namespace {

Cd eval_monic(const std::vector<Cd>& c, const Cd& z) {
    Cd v{1.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

Cd eval_monic_deriv(const std::vector<Cd>& c, const Cd& z) {
    const std::size_t n = c.size();
    Cd v{static_cast<double>(n), 0.0};
    for (std::size_t i = n; i-- > 1;) v = v * z + c[i] * static_cast<double>(i);
    return v;
}

void newton_polish(const std::vector<Cd>& c, std::vector<Cd>& roots) {
    for (auto& z : roots)
        for (int it = 0; it < 3; ++it) {
            Cd d = eval_monic_deriv(c, z);
            if (abs(d) < 1e-300) break;
            z = z - eval_monic(c, z) / d;
        }
}

std::vector<Cd> quadratic_roots(const Cd& b, const Cd& c) {
    // z^2 + bz + c; numerically stable pairing q = -(b + sign*sqrt(disc))/2.
    Cd disc = sqrt(b * b - c * 4.0);
    Cd s = (b.re * disc.re + b.im * disc.im) >= 0 ? disc : -disc;
    Cd q = (b + s) * (-0.5);
    if (abs(q) < 1e-300) return {Cd{}, -b};
    return {q, c / q};
}

std::vector<Cd> cubic_roots(const Cd& a, const Cd& b, const Cd& c) {
    // z^3 + a z^2 + b z + c, Cardano on the depressed form.
    Cd sh = a * (-1.0 / 3.0);
    Cd p = b - a * a * (1.0 / 3.0);
    Cd q = a * a * a * (2.0 / 27.0) - a * b * (1.0 / 3.0) + c;
    Cd disc = sqrt(q * q * 0.25 + p * p * p * (1.0 / 27.0));
    Cd u3 = q * (-0.5) + disc;
    if (abs(u3) < 1e-30) u3 = q * (-0.5) - disc;
    std::vector<Cd> out;
    if (abs(u3) < 1e-300) {
        out = {sh, sh, sh};
    } else {
        double r = std::cbrt(abs(u3));
        double th = std::atan2(u3.im, u3.re) / 3.0;
        for (int k = 0; k < 3; ++k) {
            Cd u{r * std::cos(th + 2 * M_PI * k / 3), r * std::sin(th + 2 * M_PI * k / 3)};
            out.push_back(u - p * (1.0 / 3.0) / u + sh);
        }
    }
    return out;
}

std::vector<Cd> quartic_roots(const Cd& a, const Cd& b, const Cd& c, const Cd& d) {
    // z^4 + a z^3 + b z^2 + c z + d via Ferrari's factorization.
    Cd sh = a * (-0.25);
    Cd a2 = a * a;
    Cd p = b - a2 * (3.0 / 8.0);
    Cd q = a2 * a * 0.125 - a * b * 0.5 + c;
    Cd r = d - a * c * 0.25 + a2 * b * (1.0 / 16.0) - a2 * a2 * (3.0 / 256.0);

    std::vector<Cd> ys;
    double scale = std::max({abs(p), std::sqrt(abs(q)), std::sqrt(std::sqrt(abs(r))), 1.0});
    if (abs(q) < 1e-14 * scale * scale * scale) {
        // biquadratic
        for (const Cd& t : quadratic_roots(p, r)) {
            Cd s = sqrt(t);
            ys.push_back(s);
            ys.push_back(-s);
        }
    } else {
        // resolvent: 8m^3 + 8pm^2 + (2p^2 - 8r)m - q^2 = 0
        auto ms = cubic_roots(p, p * p * 0.25 - r * 0.25, q * q * (-0.125) * 0.25 * 4.0 * (1.0));
        // cubic above: m^3 + p m^2 + ((2p^2-8r)/8) m - q^2/8
        ms = cubic_roots(p, (p * p * 2.0 - r * 8.0) * 0.125, q * q * (-0.125));
        Cd m = ms[0];
        for (const Cd& cand : ms)
            if (abs(cand) > abs(m)) m = cand;
        Cd s = sqrt(m * 2.0);
        Cd t1 = p * 0.5 + m - q * 0.5 / s;
        Cd t2 = p * 0.5 + m + q * 0.5 / s;
        for (const Cd& y : quadratic_roots(s, t1)) ys.push_back(y);
        for (const Cd& y : quadratic_roots(-s, t2)) ys.push_back(y);
    }
    std::vector<Cd> out;
    for (const Cd& y : ys) out.push_back(y + sh);
    std::vector<Cd> coeffs = {d, c, b, a};
    newton_polish(coeffs, out);
    return out;
}

// Complex Hessenberg reduction followed by Wilkinson-shifted QR.
std::vector<Cd> qr_eigenvalues(CMatrixD H) {
    const std::size_t n = H.rows;
    // Householder reduction to upper Hessenberg.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm += H(i, k).norm_sq();
        colnorm = std::sqrt(colnorm);
        if (colnorm < 1e-300) continue;
        Cd x0 = H(k + 1, k);
        double ax = abs(x0);
        Cd phase = ax > 1e-300 ? x0 * (1.0 / ax) : Cd{1.0, 0.0};
        Cd alpha = phase * (-colnorm);
        std::vector<Cd> v(n, Cd{});
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = H(i, k);
        double vn = 0;
        for (const auto& z : v) vn += z.norm_sq();
        if (vn < 1e-300) continue;
        double inv = 2.0 / vn;
        // H = (I - inv v v*) H (I - inv v v*)
        for (std::size_t j = 0; j < n; ++j) {
            Cd s{};
            for (std::size_t i = k + 1; i < n; ++i) s += v[i].conj() * H(i, j);
            s = s * inv;
            for (std::size_t i = k + 1; i < n; ++i) H(i, j) -= v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Cd s{};
            for (std::size_t j = k + 1; j < n; ++j) s += H(i, j) * v[j];
            s = s * inv;
            for (std::size_t j = k + 1; j < n; ++j) H(i, j) -= s * v[j].conj();
        }
    }

    std::vector<Cd> eigs;
    std::size_t hi = n;
    int budget = 80 * static_cast<int>(n) + 200;
    while (hi > 0) {
        if (hi == 1) {
            eigs.push_back(H(0, 0));
            break;
        }
        // deflate where subdiagonal is negligible
        std::size_t lo = hi - 1;
        while (lo > 0) {
            double off = abs(H(lo, lo - 1));
            double diag = abs(H(lo - 1, lo - 1)) + abs(H(lo, lo));
            if (off <= 1e-14 * (diag + 1e-300)) {
                H(lo, lo - 1) = Cd{};
                break;
            }
            --lo;
        }
        if (lo == hi - 1) {
            eigs.push_back(H(hi - 1, hi - 1));
            --hi;
            continue;
        }
        if (--budget < 0) throw NoConvergence("QR iteration budget exhausted");
        // Wilkinson shift from the trailing 2x2 of the active block.
        Cd a = H(hi - 2, hi - 2), b = H(hi - 2, hi - 1);
        Cd c = H(hi - 1, hi - 2), d = H(hi - 1, hi - 1);
        Cd tr = a + d, det = a * d - b * c;
        auto rts = quadratic_roots(-tr, det);
        Cd mu = abs(rts[0] - d) < abs(rts[1] - d) ? rts[0] : rts[1];
        // implicit single-shift QR on block [lo, hi) via Givens rotations
        std::vector<std::pair<Cd, Cd>> rot(hi);
        for (std::size_t k = lo; k < hi; ++k) {
            Cd x = (k == lo) ? H(lo, lo) - mu : H(k, k - 1);
            Cd y = (k == lo) ? H(lo + 1, lo) : (k + 1 < hi ? H(k + 1, k - 1) : Cd{});
            if (k + 1 >= hi) break;
            double nr = std::sqrt(x.norm_sq() + y.norm_sq());
            Cd cs{1.0, 0.0}, sn{};
            if (nr > 1e-300) {
                cs = x.conj() * (1.0 / nr);
                sn = y.conj() * (1.0 / nr);
            }
            rot[k] = {cs, sn};
            // apply from the left to rows k, k+1
            for (std::size_t j = (k == lo ? lo : k - 1); j < n; ++j) {
                Cd t1 = H(k, j), t2 = H(k + 1, j);
                H(k, j) = cs * t1 + sn * t2;
                H(k + 1, j) = cs.conj() * t2 - sn.conj() * t1;
            }
            // apply from the right to columns k, k+1
            std::size_t top = 0;
            for (std::size_t i = top; i < std::min(hi, k + 3); ++i) {
                Cd t1 = H(i, k), t2 = H(i, k + 1);
                H(i, k) = t1 * cs.conj() + t2 * sn.conj();
                H(i, k + 1) = t2 * cs - t1 * sn;
            }
        }
    }
    return eigs;
}

std::mt19937_64& eig_rng() {
    static std::mt19937_64 rng(0x51ED0E16ULL);
    return rng;
}

}  // namespace

std::vector<Cd> poly_roots(const std::vector<Cd>& c) {
    const std::size_t n = c.size();
    if (n == 0) return {};
    if (n == 1) return {-c[0]};
    if (n == 2) return quadratic_roots(c[1], c[0]);
    if (n == 3) {
        auto r = cubic_roots(c[2], c[1], c[0]);
        newton_polish(c, r);
        return r;
    }
    if (n == 4) return quartic_roots(c[3], c[2], c[1], c[0]);
    CMatrixD comp(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) comp(i + 1, i) = Cd{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[i];
    auto r = qr_eigenvalues(comp);
    newton_polish(c, r);
    return r;
}

std::vector<Cd> char_poly(const CMatrixD& M) {
    const std::size_t n = M.rows;
    std::vector<Cd> c(n + 1);
    c[n] = Cd{1.0, 0.0};
    CMatrixD Mk = CMatrixD::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Mk = M * Mk;
        Cd ck = ctrace(Mk) * (-1.0 / static_cast<double>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) Mk(i, i) += ck;
    }
    c.pop_back();
    return c;  // monic, leading 1 dropped
}

std::vector<Cd> eig_complex(const CMatrixD& M) {
    if (!M.is_square()) throw std::invalid_argument("eig_complex: matrix not square");
    const std::size_t n = M.rows;
    if (n == 0) return {};
    if (n == 1) return {M(0, 0)};
    if (n <= 4) return poly_roots(char_poly(M));
    return qr_eigenvalues(M);
}

std::vector<Cd> eigenvalues(const QMatrixD& A, std::size_t size_bound) {
    if (!A.is_square()) throw std::invalid_argument("eigenvalues: matrix not square");
    if (A.rows > size_bound) throw std::invalid_argument("eigenvalues: size exceeds bound");
    auto zs = eig_complex(chi(A));
    for (auto& z : zs)
        if (z.im < 0) z.im = -z.im;
    std::sort(zs.begin(), zs.end(), [](const Cd& x, const Cd& y) {
        return x.re != y.re ? x.re < y.re : x.im < y.im;
    });
    // chi eigenvalues fold into pairs; average each pair to cancel noise.
    std::vector<Cd> out;
    for (std::size_t i = 0; i + 1 < zs.size(); i += 2)
        out.push_back((zs[i] + zs[i + 1]) * 0.5);
    for (auto& z : out)
        if (std::fabs(z.im) < 1e-12 * (1.0 + std::fabs(z.re))) z.im = std::fabs(z.im);
    return out;
}

std::vector<Cd> solve_complex(CMatrixD M, std::vector<Cd> b) {
    const std::size_t n = M.rows;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (M(i, k).norm_sq() > M(piv, k).norm_sq()) piv = i;
        if (M(piv, k).norm_sq() < 1e-300)
            throw std::runtime_error("solve_complex: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
            std::swap(b[k], b[piv]);
        }
        Cd inv = M(k, k).inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            Cd f = M(i, k) * inv;
            if (f.is_zero()) continue;
            for (std::size_t j = k; j < n; ++j) M(i, j) -= f * M(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<Cd> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Cd s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= M(i, j) * x[j];
        x[i] = s * M(i, i).inverse();
    }
    return x;
}

double vec_norm(const std::vector<Cd>& v) {
    double s = 0;
    for (const auto& z : v) s += z.norm_sq();
    return std::sqrt(s);
}

double vec_norm(const std::vector<Quaternion<double>>& v) {
    double s = 0;
    for (const auto& q : v) s += q.norm_sq();
    return std::sqrt(s);
}

namespace {

// Inverse iteration on (M - shift I).
std::vector<Cd> inverse_iterate(const CMatrixD& M, Cd shift) {
    const std::size_t n = M.rows;
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Cd> v(n);
    for (auto& z : v) z = {unif(eig_rng()), unif(eig_rng())};
    double nv = vec_norm(v);
    for (auto& z : v) z = z * (1.0 / nv);
    CMatrixD S = M;
    double scale = frobenius_norm(M) + 1.0;
    for (std::size_t i = 0; i < n; ++i) S(i, i) -= shift;
    for (int it = 0; it < 6; ++it) {
        std::vector<Cd> w;
        try {
            w = solve_complex(S, v);
        } catch (const std::runtime_error&) {
            // exactly singular shift: nudge and retry
            for (std::size_t i = 0; i < n; ++i) S(i, i) -= Cd{1e-13 * scale, 0};
            w = solve_complex(S, v);
        }
        double nw = vec_norm(w);
        for (auto& z : w) z = z * (1.0 / nw);
        v = std::move(w);
    }
    return v;
}

std::vector<Quaternion<double>> fold_to_quaternion(const std::vector<Cd>& w) {
    const std::size_t n = w.size() / 2;
    std::vector<Quaternion<double>> q(n);
    for (std::size_t i = 0; i < n; ++i)
        q[i] = Quaternion<double>(w[i].re, w[i].im, w[i + n].re, -w[i + n].im);
    return q;
}

double eigvec_residual(const QMatrixD& A, const std::vector<Quaternion<double>>& v,
                       const Cd& lambda) {
    const std::size_t n = A.rows;
    Quaternion<double> lam(lambda.re, lambda.im);
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Quaternion<double> r{};
        for (std::size_t j = 0; j < n; ++j) r += A(i, j) * v[j];
        r -= v[i] * lam;
        s += r.norm_sq();
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<Quaternion<double>> eigenvector(const QMatrixD& A, const Cd& lambda) {
    CMatrixD M = chi(A);
    const std::size_t n = A.rows;
    auto attempt = [&](Cd shift, bool flip) {
        auto w = inverse_iterate(M, shift);
        if (flip) {
            // J conj(w) maps a conj(lambda)-eigenvector to a lambda-eigenvector.
            std::vector<Cd> w2(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                w2[i] = -w[i + n].conj();
                w2[i + n] = w[i].conj();
            }
            w = std::move(w2);
        }
        auto v = fold_to_quaternion(w);
        double nv = vec_norm(v);
        if (nv > 1e-12)
            for (auto& q : v) q = q * (1.0 / nv);
        return v;
    };
    auto v = attempt(lambda, false);
    double scale = frobenius_norm(to_float(A)) + 1.0;
    if (eigvec_residual(A, v, lambda) < 1e-8 * scale) return v;
    auto v2 = attempt(lambda.conj(), true);
    if (eigvec_residual(A, v2, lambda) <= eigvec_residual(A, v, lambda)) return v2;
    return v;
}

Quaternion<double> complexifying_unit(const Quaternion<double>& q) {
    Quaternion<double> p = q.pure_part();
    double rho = abs(p);
    if (rho < 1e-300) return Quaternion<double>::one();
    Quaternion<double> phat = p * (1.0 / rho);
    Quaternion<double> ihat = Quaternion<double>::i();
    // unit u rotating phat to ihat: u ~ 1 - ihat*phat, unless phat = -ihat.
    Quaternion<double> u = Quaternion<double>::one() - ihat * phat;
    if (abs(u) < 1e-9) u = Quaternion<double>::j();
    return u * (1.0 / abs(u));
}

namespace {

// Unitary with the given unit vector as first column, completed by
// Gram-Schmidt over the standard basis.
QMatrixD complete_unitary(const std::vector<Quaternion<double>>& q) {
    const std::size_t n = q.size();
    std::vector<std::vector<Quaternion<double>>> cols = {q};
    for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
        std::vector<Quaternion<double>> v(n);
        v[e] = Quaternion<double>::one();
        for (const auto& u : cols) {
            Quaternion<double> ip{};
            for (std::size_t i = 0; i < n; ++i) ip += u[i].conj() * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= u[i] * ip;
        }
        double nv = vec_norm(v);
        if (nv < 0.3) continue;
        for (auto& x : v) x = x * (1.0 / nv);
        cols.push_back(std::move(v));
    }
    if (cols.size() != n) throw NoConvergence("unitary completion failed");
    QMatrixD U(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) U(i, j) = cols[j][i];
    return U;
}

}  // namespace

SchurResult schur(const QMatrixD& A, std::vector<std::size_t> order, std::size_t size_bound) {
    if (!A.is_square()) throw std::invalid_argument("schur: matrix not square");
    const std::size_t n = A.rows;
    if (n > size_bound) throw std::invalid_argument("schur: size exceeds bound");
    auto eigs = eigenvalues(A, size_bound);
    if (order.empty()) {
        order.resize(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
    }
    if (order.size() != n) throw std::invalid_argument("schur: bad order length");

    QMatrixD T = A;
    QMatrixD U = QMatrixD::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = n - k;
        // trailing block
        QMatrixD Tb(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) Tb(i, j) = T(k + i, k + j);
        Cd lambda = eigs[order[k]];
        QMatrixD V;
        if (m == 1) {
            Quaternion<double> u = complexifying_unit(Tb(0, 0));
            V = QMatrixD(1, 1);
            V(0, 0) = u.conj();  // column form; V* Tb V = u Tb u^{-1}
        } else {
            auto v = eigenvector(Tb, lambda);
            V = complete_unitary(v);
        }
        // W = diag(I_k, V); T <- W* T W, U <- W* U
        QMatrixD W = QMatrixD::identity(n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) W(k + i, k + j) = V(i, j);
        QMatrixD Ws = adjoint(W);
        T = Ws * T * W;
        U = Ws * U;
    }
    // Clean the strictly-lower residue and tidy diagonal imaginary dust.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) T(i, j) = Quaternion<double>{};
    return {U, T};
}

}  // namespace quatlab
