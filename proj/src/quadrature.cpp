#include "wigdet/quadrature.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace wigdet {

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw InvalidInput("Gauss-Legendre rule needs n >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            double pn = n == 1 ? x : p1;
            double pm = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T, typename F>
std::pair<T, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T kron = fc * wgk[7];
    T gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        T f1 = f(c - h * xgk[j]);
        T f2 = f(c + h * xgk[j]);
        kron += (f1 + f2) * wgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * wg[j / 2];
    }
    return {kron * h, std::abs(kron - gauss) * std::abs(h)};
}

template <typename T, typename F>
QuadResult<T> adaptive_gk(const F& f, double a, double b, double abs_tol, double rel_tol, int max_intervals,
                          int initial_panels) {
    struct Piece {
        double a, b;
        T value;
        double err;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    std::priority_queue<Piece> heap;
    T total{};
    double err = 0.0;
    int evals = 0;
    initial_panels = std::max(1, initial_panels);
    for (int p = 0; p < initial_panels; ++p) {
        double pa = a + (b - a) * p / initial_panels;
        double pb = p + 1 == initial_panels ? b : a + (b - a) * (p + 1) / initial_panels;
        auto [v, e] = gk15<T>(f, pa, pb);
        evals += 15;
        heap.push({pa, pb, v, e});
        total += v;
        err += e;
    }
    int count = initial_panels;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_intervals) {
        Piece top = heap.top();
        heap.pop();
        double m = 0.5 * (top.a + top.b);
        if (!(m > top.a && m < top.b)) {
            heap.push(top);
            break;
        }
        auto [v1, e1] = gk15<T>(f, top.a, m);
        auto [v2, e2] = gk15<T>(f, m, top.b);
        evals += 30;
        total += v1 + v2 - top.value;
        err += e1 + e2 - top.err;
        heap.push({top.a, m, v1, e1});
        heap.push({m, top.b, v2, e2});
        ++count;
    }
    // re-sum to shed accumulated rounding from the running updates
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().err;
        heap.pop();
    }
    return {sum, esum, evals};
}

template <typename T, typename F>
QuadResult<T> tanh_sinh(const F& f, double a, double b, double abs_tol, int max_level) {
    const double half = 0.5 * (b - a);
    const double tmax = 4.5;
    auto term = [&](double t) -> T {
        const double u = 0.5 * pi * std::sinh(t);
        const double ch = std::cosh(u);
        const double w = 0.5 * pi * std::cosh(t) / (ch * ch);
        // distances to the endpoints without cancellation
        const double dl = 2.0 / (1.0 + std::exp(-2.0 * u));
        const double dr = 2.0 / (1.0 + std::exp(2.0 * u));
        const double x = u < 0 ? a + half * dl : b - half * dr;
        if (!(x > a && x < b) || w == 0.0) return T{};
        return f(x) * w;
    };
    double h = 1.0;
    T sum = term(0.0);
    for (double t = h; t <= tmax; t += h) sum += term(t) + term(-t);
    T prev = sum * h * half;
    int evals = 1 + 2 * int(tmax / h);
    double err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2 * h) {
            sum += term(t) + term(-t);
            evals += 2;
        }
        T cur = sum * h * half;
        err = std::abs(cur - prev);
        prev = cur;
        if (level >= 3 && err < abs_tol) break;
    }
    return {prev, err, evals};
}

}  // namespace

QuadResult<double> integrate_gk(const RealFn& f, double a, double b, double abs_tol, double rel_tol,
                                int max_intervals, int initial_panels) {
    if (a == b) return {0.0, 0.0, 0};
    return adaptive_gk<double>(f, a, b, abs_tol, rel_tol, max_intervals, initial_panels);
}

QuadResult<cdouble> integrate_gk(const ComplexFn& f, double a, double b, double abs_tol, double rel_tol,
                                 int max_intervals, int initial_panels) {
    if (a == b) return {cdouble{}, 0.0, 0};
    return adaptive_gk<cdouble>(f, a, b, abs_tol, rel_tol, max_intervals, initial_panels);
}

QuadResult<double> integrate_split(const RealFn& f, double a, double b, const std::vector<double>& cuts,
                                   double abs_tol, double rel_tol) {
    const double sign = b >= a ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> pts{lo};
    for (double c : cuts)
        if (c > lo && c < hi) pts.push_back(c);
    pts.push_back(hi);
    QuadResult<double> out{0.0, 0.0, 0};
    const double share = abs_tol / double(pts.size() - 1);
    for (size_t i = 1; i < pts.size(); ++i) {
        auto r = integrate_gk(f, pts[i - 1], pts[i], share, rel_tol);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
    }
    out.value *= sign;
    return out;
}

QuadResult<double> integrate_tanh_sinh(const RealFn& f, double a, double b, double abs_tol, int max_level) {
    return tanh_sinh<double>(f, a, b, abs_tol, max_level);
}

QuadResult<cdouble> integrate_tanh_sinh(const ComplexFn& f, double a, double b, double abs_tol, int max_level) {
    return tanh_sinh<cdouble>(f, a, b, abs_tol, max_level);
}

std::vector<cdouble> direct_transform(std::span<const cdouble> s, double h, double omega0, double d_omega,
                                      int n_omega) {
    std::vector<cdouble> out(n_omega);
    const size_t m = s.size();
    for (int k = 0; k < n_omega; ++k) {
        const cdouble z = std::polar(1.0, (omega0 + k * d_omega) * h);
        cdouble acc{};
        for (size_t j = m; j-- > 0;) acc = acc * z + s[j];
        out[k] = acc;
    }
    return out;
}

std::vector<cdouble> chirp_transform(std::span<const cdouble> s, double h, double omega0, double d_omega,
                                     int n_omega) {
    const size_t m = s.size();
    if (m == 0 || n_omega <= 0) return std::vector<cdouble>(std::max(n_omega, 0));
    if (double(m) * n_omega < double(1 << 16)) return direct_transform(s, h, omega0, d_omega, n_omega);

    const double theta = d_omega * h;
    size_t len = 1;
    while (len < m + n_omega - 1) len <<= 1;
    auto chirp = [&](double j) { return std::polar(1.0, std::fmod(0.5 * theta * j * j, two_pi)); };

    std::vector<cdouble> A(len), B(len);
    for (size_t j = 0; j < m; ++j) {
        const double jj = double(j);
        A[j] = s[j] * std::polar(1.0, std::fmod(omega0 * h * jj, two_pi)) * chirp(jj);
    }
    for (int k = 0; k < n_omega; ++k) B[k] = std::conj(chirp(double(k)));
    for (size_t j = 1; j < m; ++j) B[len - j] = std::conj(chirp(double(j)));

    Eigen::FFT<double> fft;
    std::vector<cdouble> FA, FB, conv;
    fft.fwd(FA, A);
    fft.fwd(FB, B);
    for (size_t i = 0; i < len; ++i) FA[i] *= FB[i];
    fft.inv(conv, FA);

    std::vector<cdouble> out(n_omega);
    for (int k = 0; k < n_omega; ++k) out[k] = chirp(double(k)) * conv[k];
    return out;
}

double raised_cosine(double u, double L, double frac) {
    const double x = std::abs(u);
    const double start = (1.0 - frac) * L;
    if (x <= start) return 1.0;
    if (x >= L) return 0.0;
    return 0.5 * (1.0 + std::cos(pi * (x - start) / (frac * L)));
}

}  // namespace wigdet
