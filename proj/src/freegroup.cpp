#include "hm/freegroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "hm/errors.hpp"

namespace hm {

Word inverse(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (int& l : r) l = -l;
    return r;
}

Word reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int l : w) {
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = reduce(w);
    size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) { ++i; --j; }
    return Word(r.begin() + i, r.begin() + j);
}

Word concat(const Word& a, const Word& b) {
    Word r(a);
    r.insert(r.end(), b.begin(), b.end());
    return reduce(r);
}

Word power(const Word& w, int64_t k) {
    Word base = k < 0 ? inverse(w) : w;
    Word r;
    for (int64_t i = 0; i < (k < 0 ? -k : k); ++i) r.insert(r.end(), base.begin(), base.end());
    return reduce(r);
}

namespace {

int letter_code(int l) { return l > 0 ? 2 * l - 2 : -2 * l - 1; }

// Booth-style least rotation (by letter code order).
size_t least_rotation(const Word& w) {
    size_t n = w.size();
    if (n == 0) return 0;
    std::vector<int> s(2 * n);
    for (size_t i = 0; i < 2 * n; ++i) s[i] = letter_code(w[i % n]);
    size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        int a = s[i + k], b = s[j + k];
        if (a == b) { ++k; continue; }
        if (a > b) i = i + k + 1;
        else j = j + k + 1;
        if (i == j) ++j;
        k = 0;
    }
    return std::min(i, j);
}

Word rotate(const Word& w, size_t r) {
    Word out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[i] = w[(i + r) % w.size()];
    return out;
}

bool code_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](int x, int y) { return letter_code(x) < letter_code(y); });
}

}  // namespace

Word canonical_cyclic(const Word& w) {
    Word a = rotate(w, least_rotation(w));
    Word wi = inverse(w);
    Word b = rotate(wi, least_rotation(wi));
    return code_less(b, a) ? b : a;
}

bool is_proper_power(const Word& w) {
    size_t n = w.size();
    for (size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
        if (ok) return true;
    }
    return false;
}

bool cyclic_equal(const Word& a, const Word& b) {
    return canonical_cyclic(cyclic_reduce(a)) == canonical_cyclic(cyclic_reduce(b));
}

std::vector<int64_t> exponent_sums(const Word& w, int rank) {
    std::vector<int64_t> e(rank, 0);
    for (int l : w) e[std::abs(l) - 1] += l > 0 ? 1 : -1;
    return e;
}

RibbonRose::RibbonRose(int rank, const std::vector<int>& ccw_letters) : rank_(rank) {
    if (int(ccw_letters.size()) != 2 * rank) throw DomainError("rose cyclic order has wrong size");
    pos_.assign(2 * rank, -1);
    order_ = ccw_letters;
    for (int i = 0; i < 2 * rank; ++i) {
        int l = ccw_letters[i];
        if (l == 0 || std::abs(l) > rank || pos_[idx(l)] >= 0) throw DomainError("bad rose cyclic order");
        pos_[idx(l)] = i;
    }
}

std::vector<Word> RibbonRose::faces() const {
    // Arriving along half-edge h, continue along the next half-edge counterclockwise.
    std::vector<bool> used(2 * rank_, false);
    std::vector<Word> out;
    for (int start = 0; start < 2 * rank_; ++start) {
        if (used[start]) continue;
        Word face;
        int h = start;
        while (!used[h]) {
            used[h] = true;
            int l = order_[h];
            face.push_back(l);
            int arrive = he(-l);
            h = (arrive + 1) % degree();
        }
        out.push_back(face);
    }
    return out;
}

int64_t linking_count(const RibbonRose& R, const Word& a, const Word& b, bool count_transverse) {
    const size_t m = a.size(), n = b.size();
    if (m == 0 || n == 0) return 0;
    int64_t count = 0;
    for (size_t i = 0; i < m; ++i) {
        const int a_in = R.he(-a[(i + m - 1) % m]);
        for (size_t j = 0; j < n; ++j) {
            const int b_in = R.he(-b[(j + n - 1) % n]);
            if (a_in == b_in) continue;
            size_t len = 0;
            while (len < m + n && a[(i + len) % m] == b[(j + len) % n]) ++len;
            if (len >= m + n) continue;  // same axis
            if (len == 0) {
                if (!count_transverse) continue;
                const int a_out = R.he(a[i]), b_out = R.he(b[j]);
                if (a_in == b_out || a_out == b_in) continue;
                const int span = R.ccw(a_in, a_out);
                const bool in1 = R.ccw(a_in, b_in) < span;
                const bool in2 = R.ccw(a_in, b_out) < span;
                if (in1 != in2) ++count;
            } else {
                const int s = R.he(a[i]);
                const bool sig_start = R.ccw(s, a_in) < R.ccw(s, b_in);
                const int e = R.he(-a[(i + len - 1) % m]);
                const int a_out = R.he(a[(i + len) % m]), b_out = R.he(b[(j + len) % n]);
                const bool sig_end = R.ccw(e, a_out) < R.ccw(e, b_out);
                if (sig_start == sig_end) ++count;
            }
        }
    }
    return count;
}

int64_t intersection(const RibbonRose& R, const Word& a0, const Word& b0) {
    Word a = cyclic_reduce(a0), b = cyclic_reduce(b0);
    if (a.empty() || b.empty()) return 0;
    if (canonical_cyclic(a) == canonical_cyclic(b)) return 0;
    return linking_count(R, a, b, true) + linking_count(R, a, inverse(b), false);
}

int64_t self_intersection(const RibbonRose& R, const Word& w0) {
    Word w = cyclic_reduce(w0);
    if (w.empty()) return 0;
    int64_t total = linking_count(R, w, w, true) + linking_count(R, w, inverse(w), false);
    return total / 2;
}

bool is_simple(const RibbonRose& R, const Word& w0) {
    Word w = cyclic_reduce(w0);
    if (w.empty() || is_proper_power(w)) return false;
    return self_intersection(R, w) == 0;
}

Word apply_sigma(const Word& w, int gen) {
    const int i = std::abs(gen);
    Word out;
    out.reserve(w.size() * 2);
    for (int l : w) {
        const int g = std::abs(l);
        const bool inv = l < 0;
        Word img;
        if (g == i) {
            if (gen > 0) img = {i, i + 1, -i};
            else img = {i + 1};
        } else if (g == i + 1) {
            if (gen > 0) img = {i};
            else img = {-(i + 1), i, i + 1};
        } else {
            img = {g};
        }
        if (inv) img = inverse(img);
        for (int x : img) {
            if (!out.empty() && out.back() == -x) out.pop_back();
            else out.push_back(x);
        }
    }
    return out;
}

Word apply_braid(const Word& w, const BraidWord& b) {
    Word r = w;
    for (auto it = b.rbegin(); it != b.rend(); ++it) r = apply_sigma(r, *it);
    return r;
}

Word apply_braid_inverse(const Word& w, const BraidWord& b) {
    Word r = w;
    for (int g : b) r = apply_sigma(r, -g);
    return r;
}

BraidWord braid_inverse(const BraidWord& b) {
    BraidWord r(b.rbegin(), b.rend());
    for (int& g : r) g = -g;
    return r;
}

int Axis::h_out(int64_t k) const {
    int64_t m = period();
    return rose->he(alpha[((k % m) + m) % m]);
}

int Axis::h_in(int64_t k) const {
    int64_t m = period();
    return rose->he(-alpha[(((k - 1) % m) + m) % m]);
}

int compare_ends(const TreeEnd& a, int64_t sa, const TreeEnd& b, int64_t sb) {
    if (a.side != b.side) throw DomainError("comparing ends on different sides");
    const Axis& ax = *a.axis;
    const int64_t ka = a.k + sa * ax.period(), kb = b.k + sb * ax.period();
    if (ka != kb) return ka < kb ? -1 : 1;
    const RibbonRose& R = *ax.rose;
    const size_t limit = a.ray.size() + b.ray.size() + 1;
    int ref = a.side == 0 ? ax.h_out(ka) : ax.h_in(ka);
    for (size_t t = 0; t < limit; ++t) {
        const int la = a.ray[t % a.ray.size()], lb = b.ray[t % b.ray.size()];
        if (la != lb) {
            const int ra = R.ccw(ref, R.he(la)), rb = R.ccw(ref, R.he(lb));
            const bool a_smaller = a.side == 0 ? ra > rb : ra < rb;
            return a_smaller ? -1 : 1;
        }
        ref = R.he(-la);
    }
    return 0;
}

std::vector<LiftArc> crossing_lifts(const std::shared_ptr<const Axis>& axis, const Word& beta) {
    const Axis& ax = *axis;
    const RibbonRose& R = *ax.rose;
    const int64_t m = ax.period();
    const int64_t n = int64_t(beta.size());
    std::vector<LiftArc> out;
    if (n == 0 || cyclic_equal(ax.alpha, beta)) return out;
    auto side_of = [&](int64_t k, int h) {
        const int ho = ax.h_out(k), hi = ax.h_in(k);
        return R.ccw(ho, h) < R.ccw(ho, hi) ? 0 : 1;
    };
    for (int64_t k = 0; k < m; ++k) {
        for (int64_t j = 0; j < n; ++j) {
            const int in_letter = beta[(j + n - 1) % n];
            const int b_in = R.he(-in_letter);
            if (b_in == ax.h_out(k) || b_in == ax.h_in(k)) continue;
            int64_t kk = k, t = 0;
            int dir = 0;
            while (t <= m + n) {
                const int h = R.he(beta[(j + t) % n]);
                if (dir >= 0 && h == ax.h_out(kk)) { dir = 1; ++kk; ++t; continue; }
                if (dir <= 0 && h == ax.h_in(kk)) { dir = -1; --kk; ++t; continue; }
                break;
            }
            if (t > m + n) continue;
            const int b_out = R.he(beta[(j + t) % n]);
            const int s_back = side_of(k, b_in), s_fwd = side_of(kk, b_out);
            if (s_back == s_fwd) continue;
            TreeEnd back{axis, s_back, k, {}}, fwd{axis, s_fwd, kk, {}};
            back.ray.resize(n);
            fwd.ray.resize(n);
            for (int64_t s = 0; s < n; ++s) {
                back.ray[s] = -beta[(((j - 1 - s) % n) + n) % n];
                fwd.ray[s] = beta[(j + t + s) % n];
            }
            LiftArc arc;
            arc.left = s_back == 0 ? back : fwd;
            arc.right = s_back == 0 ? fwd : back;
            int64_t shift = arc.left.k >= 0 ? arc.left.k / m : -((-arc.left.k + m - 1) / m);
            arc.left.k -= shift * m;
            arc.right.k -= shift * m;
            out.push_back(std::move(arc));
        }
    }
    return out;
}

}
