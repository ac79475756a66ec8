#include "moufang/loop.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace moufang {

LoopTable LoopTable::from_grid(int n, std::vector<int> cells) {
    if (n <= 0 || (int)cells.size() != n * n)
        fail("NotLatin", "grid is not a square table of the declared order");
    for (int v : cells)
        if (v < 0 || v >= n) fail("NotLatin", "entry out of range 0.." + std::to_string(n - 1));

    std::vector<char> seen(n);
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int c = 0; c < n; ++c) {
            int v = cells[r * n + c];
            if (seen[v]) fail("NotLatin", "row " + std::to_string(r) + " repeats " + std::to_string(v));
            seen[v] = 1;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int r = 0; r < n; ++r) {
            int v = cells[r * n + c];
            if (seen[v]) fail("NotLatin", "column " + std::to_string(c) + " repeats " + std::to_string(v));
            seen[v] = 1;
        }
    }

    int e = -1;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = cells[cand * n + x] == x && cells[x * n + cand] == x;
        if (ok) {
            e = cand;
            break;
        }
    }
    if (e < 0) fail("NoIdentity", "no two-sided identity element");
    if (e != 0) {
        // swap labels 0 <-> e so the identity sits at index 0
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[0], p[e]);
        std::vector<int> moved(n * n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) moved[p[x] * n + p[y]] = p[cells[x * n + y]];
        cells = std::move(moved);
    }

    LoopTable t;
    t.n_ = n;
    t.cells_ = std::move(cells);
    t.ldiv_.assign(n * n, 0);
    t.rdiv_.assign(n * n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int z = t.cells_[x * n + y];
            t.ldiv_[x * n + z] = y;
            t.rdiv_[z * n + y] = x;
        }
    return t;
}

std::optional<std::array<int, 3>> moufang_violation(const LoopTable& L) {
    int n = L.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xy = L.mul(x, y);
            int lhs_base = L.mul(xy, x);
            for (int z = 0; z < n; ++z)
                if (L.mul(lhs_base, z) != L.mul(x, L.mul(y, L.mul(x, z))))
                    return std::array<int, 3>{x, y, z};
        }
    return std::nullopt;
}

bool is_moufang(const LoopTable& L) { return !moufang_violation(L); }

bool is_associative(const LoopTable& L) {
    int n = L.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xy = L.mul(x, y);
            for (int z = 0; z < n; ++z)
                if (L.mul(xy, z) != L.mul(x, L.mul(y, z))) return false;
        }
    return true;
}

bool is_commutative(const LoopTable& L) {
    int n = L.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (L.mul(x, y) != L.mul(y, x)) return false;
    return true;
}

int commutator(const LoopTable& L, int x, int y) {
    return L.ldiv(L.mul(y, x), L.mul(x, y));
}

int associator(const LoopTable& L, int x, int y, int z) {
    return L.ldiv(L.mul(x, L.mul(y, z)), L.mul(L.mul(x, y), z));
}

std::vector<int> left_nucleus(const LoopTable& L) {
    int n = L.size();
    std::vector<int> out;
    for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y) {
            int xy = L.mul(x, y);
            for (int z = 0; z < n && ok; ++z) ok = L.mul(xy, z) == L.mul(x, L.mul(y, z));
        }
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<int> nucleus(const LoopTable& L) {
    int n = L.size();
    std::vector<int> out;
    for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y) {
            int xy = L.mul(x, y);
            int yx = L.mul(y, x);
            for (int z = 0; z < n && ok; ++z) {
                ok = L.mul(xy, z) == L.mul(x, L.mul(y, z)) &&
                     L.mul(yx, z) == L.mul(y, L.mul(x, z)) &&
                     L.mul(L.mul(y, z), x) == L.mul(y, L.mul(z, x));
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<int> center(const LoopTable& L) {
    int n = L.size();
    std::vector<int> out;
    for (int x : nucleus(L)) {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y) ok = L.mul(x, y) == L.mul(y, x);
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<int> squares(const LoopTable& L) {
    std::set<int> s;
    for (int x = 0; x < L.size(); ++x) s.insert(L.mul(x, x));
    return {s.begin(), s.end()};
}

namespace {

// closure under products of member ∪ {fresh}, incremental: only pairs
// touching newly added elements are multiplied
void close_over(const LoopTable& L, std::vector<int>& member, std::vector<char>& in,
                std::vector<int>& fresh) {
    while (!fresh.empty()) {
        int e = fresh.back();
        fresh.pop_back();
        for (size_t i = 0; i < member.size(); ++i) {
            int t = member[i];
            for (int p : {L.mul(e, t), L.mul(t, e)}) {
                if (!in[p]) {
                    in[p] = 1;
                    member.push_back(p);
                    fresh.push_back(p);
                }
            }
        }
    }
}

} // namespace

std::vector<int> subloop_generated(const LoopTable& L, const std::vector<int>& gens) {
    int n = L.size();
    std::vector<char> in(n, 0);
    std::vector<int> member{0}, fresh;
    in[0] = 1;
    for (int g : gens) {
        if (g < 0 || g >= n) fail("InvalidParams", "generator index out of range");
        if (!in[g]) {
            in[g] = 1;
            member.push_back(g);
            fresh.push_back(g);
        }
    }
    close_over(L, member, in, fresh);
    // closure under products suffices for finite loops; divisions are
    // confirmed rather than computed
    std::sort(member.begin(), member.end());
    return member;
}

bool is_subloop(const LoopTable& L, const std::vector<int>& members) {
    int n = L.size();
    std::vector<char> in(n, 0);
    for (int x : members) {
        if (x < 0 || x >= n || in[x]) return false;
        in[x] = 1;
    }
    if (members.empty() || !in[0]) return false;
    for (int x : members)
        for (int y : members)
            if (!in[L.mul(x, y)]) return false;
    return true;
}

std::vector<std::vector<int>> enumerate_subloops(const LoopTable& L) {
    int n = L.size();
    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> order, frontier;
    std::vector<int> trivial{0};
    known.insert(trivial);
    order.push_back(trivial);
    frontier.push_back(trivial);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& S : frontier) {
            std::vector<char> in(n, 0);
            for (int s : S) in[s] = 1;
            for (int x = 0; x < n; ++x) {
                if (in[x]) continue;
                std::vector<int> member = S, fresh{x};
                std::vector<char> in2 = in;
                in2[x] = 1;
                member.push_back(x);
                close_over(L, member, in2, fresh);
                std::sort(member.begin(), member.end());
                if (known.insert(member).second) {
                    order.push_back(member);
                    next.push_back(std::move(member));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return order;
}

bool is_normal(const LoopTable& L, const std::vector<int>& S) {
    int n = L.size();
    if (!is_subloop(L, S)) return false;
    // product-set masks zS for every z, reused by all three conditions
    std::vector<std::vector<char>> right_of(n, std::vector<char>(n, 0)); // right_of[z][w]: w in zS
    for (int z = 0; z < n; ++z)
        for (int s : S) right_of[z][L.mul(z, s)] = 1;
    for (int x = 0; x < n; ++x) {
        // xS = Sx
        for (int s : S)
            if (!right_of[x][L.mul(s, x)]) return false;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xy = L.mul(x, y);
            for (int s : S) {
                // (xy)S = x(yS)
                if (!right_of[xy][L.mul(x, L.mul(y, s))]) return false;
                // S(xy) = (Sx)y ; S(xy) = (xy)S by the first condition
                if (!right_of[xy][L.mul(L.mul(s, x), y)]) return false;
            }
        }
    return true;
}

CosetPartition cosets(const LoopTable& L, const std::vector<int>& S) {
    int n = L.size();
    if (!is_subloop(L, S)) fail("NotNormal", "member list is not a subloop");
    CosetPartition part;
    part.index_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (part.index_of[x] >= 0) continue;
        int idx = (int)part.cosets.size();
        std::vector<int> coset;
        for (int s : S) {
            int w = L.mul(x, s);
            if (part.index_of[w] >= 0)
                fail("NotNormal", "left cosets of the subloop are not disjoint");
            part.index_of[w] = idx;
            coset.push_back(w);
        }
        std::sort(coset.begin(), coset.end());
        part.cosets.push_back(std::move(coset));
    }
    return part;
}

LoopTable quotient(const LoopTable& L, const std::vector<int>& S, CosetPartition* partition) {
    if (!is_normal(L, S)) fail("NotNormal", "subloop is not normal");
    CosetPartition part = cosets(L, S);
    int q = (int)part.cosets.size();
    std::vector<int> cells(q * q, -1);
    for (int x = 0; x < L.size(); ++x)
        for (int y = 0; y < L.size(); ++y) {
            int cx = part.index_of[x], cy = part.index_of[y];
            int cz = part.index_of[L.mul(x, y)];
            int& cell = cells[cx * q + cy];
            if (cell < 0) cell = cz;
            else if (cell != cz)
                fail("NotNormal", "coset product depends on representatives");
        }
    LoopTable Q = LoopTable::from_grid(q, std::move(cells));
    if (partition) *partition = std::move(part);
    return Q;
}

int element_order(const LoopTable& L, int x) {
    int p = x, k = 1;
    while (p != 0) {
        p = L.mul(x, p);
        ++k;
        if (k > L.size()) fail("Internal", "left powers do not reach the identity");
    }
    return k;
}

std::vector<int> element_orders(const LoopTable& L) {
    std::vector<int> out(L.size());
    for (int x = 0; x < L.size(); ++x) out[x] = element_order(L, x);
    return out;
}

bool left_right_powers_agree(const LoopTable& L) {
    for (int x = 0; x < L.size(); ++x) {
        int l = x, r = x;
        do {
            if (l != r) return false;
            l = L.mul(x, l);
            r = L.mul(r, x);
        } while (l != 0 || r != 0);
        if (l != r) return false;
    }
    return true;
}

LoopTable direct_product(const LoopTable& A, const LoopTable& B) {
    int na = A.size(), nb = B.size(), n = na * nb;
    std::vector<int> cells(n * n);
    for (int x1 = 0; x1 < na; ++x1)
        for (int x2 = 0; x2 < nb; ++x2)
            for (int y1 = 0; y1 < na; ++y1)
                for (int y2 = 0; y2 < nb; ++y2)
                    cells[(x1 * nb + x2) * n + (y1 * nb + y2)] =
                        A.mul(x1, y1) * nb + B.mul(x2, y2);
    return LoopTable::from_grid(n, std::move(cells));
}

LoopTable restrict_to(const LoopTable& L, const std::vector<int>& members) {
    if (!is_subloop(L, members)) fail("InvalidParams", "member list is not a subloop");
    int k = (int)members.size();
    std::vector<int> pos(L.size(), -1);
    for (int i = 0; i < k; ++i) pos[members[i]] = i;
    std::vector<int> cells(k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) cells[i * k + j] = pos[L.mul(members[i], members[j])];
    return LoopTable::from_grid(k, std::move(cells));
}

LoopTable relabel(const LoopTable& L, const std::vector<int>& perm) {
    int n = L.size();
    if ((int)perm.size() != n) fail("InvalidParams", "permutation length mismatch");
    std::vector<char> hit(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || hit[v]) fail("InvalidParams", "not a permutation");
        hit[v] = 1;
    }
    std::vector<int> cells(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) cells[perm[x] * n + perm[y]] = perm[L.mul(x, y)];
    return LoopTable::from_grid(n, std::move(cells));
}

std::string Fingerprint::key() const {
    std::ostringstream os;
    os << n << '|';
    for (int v : order_multiset) os << v << ',';
    os << '|' << center_size << '|' << nucleus_size << '|' << assoc_subloop_size << '|'
       << squares_size << '|';
    for (int v : noncommuting_counts) os << v << ',';
    os << '|' << nonassoc_triples;
    return os.str();
}

Fingerprint fingerprint(const LoopTable& L) {
    int n = L.size();
    Fingerprint fp;
    fp.n = n;
    fp.order_multiset = element_orders(L);
    std::sort(fp.order_multiset.begin(), fp.order_multiset.end());
    fp.center_size = (int)center(L).size();
    fp.nucleus_size = (int)nucleus(L).size();
    fp.assoc_subloop_size = (int)associator_subloop(L).size();
    fp.squares_size = (int)squares(L).size();
    fp.noncommuting_counts.assign(n, 0);
    for (int x = 0; x < n; ++x) {
        int c = 0;
        for (int y = 0; y < n; ++y)
            if (L.mul(x, y) != L.mul(y, x)) ++c;
        fp.noncommuting_counts[x] = c;
    }
    std::sort(fp.noncommuting_counts.begin(), fp.noncommuting_counts.end());
    long long bad = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xy = L.mul(x, y);
            for (int z = 0; z < n; ++z)
                if (L.mul(xy, z) != L.mul(x, L.mul(y, z))) ++bad;
        }
    fp.nonassoc_triples = bad;
    return fp;
}

std::vector<int> associator_subloop(const LoopTable& L) {
    int n = L.size();
    std::vector<char> in(n, 0);
    std::vector<int> member{0}, fresh;
    in[0] = 1;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xy = L.mul(x, y);
            for (int z = 0; z < n; ++z) {
                int lhs = L.mul(xy, z);
                int rhs = L.mul(x, L.mul(y, z));
                if (lhs != rhs) {
                    int w = L.ldiv(rhs, lhs);
                    if (!in[w]) {
                        in[w] = 1;
                        member.push_back(w);
                        fresh.push_back(w);
                    }
                }
            }
        }
    close_over(L, member, in, fresh);
    std::sort(member.begin(), member.end());
    return member;
}

namespace {

struct IsoSearch {
    const LoopTable& A;
    const LoopTable& B;
    std::vector<int> map, imap;          // partial bijection, -1 = undefined
    std::vector<int> defined;            // domain elements in definition order
    std::vector<std::array<int, 3>> invA, invB; // (order, noncommuting, left-nonassoc)

    bool candidates_match(int a, int b) const { return invA[a] == invB[b]; }

    // define map[a] = b and propagate products; returns false on conflict.
    // On failure the caller rewinds using the trail mark.
    bool extend(int a, int b) {
        size_t qhead = defined.size();
        if (!define(a, b)) return false;
        while (qhead < defined.size()) {
            int e = defined[qhead++];
            for (size_t i = 0; i < defined.size(); ++i) {
                int d = defined[i];
                if (!check_product(e, d) || !check_product(d, e)) return false;
            }
        }
        return true;
    }

    bool check_product(int p, int q) {
        int r = A.mul(p, q);
        int s = B.mul(map[p], map[q]);
        if (map[r] >= 0) return map[r] == s;
        if (imap[s] >= 0) return false;
        return define(r, s);
    }

    bool define(int a, int b) {
        if (map[a] >= 0) return map[a] == b;
        if (imap[b] >= 0) return false;
        if (!candidates_match(a, b)) return false;
        map[a] = b;
        imap[b] = a;
        defined.push_back(a);
        return true;
    }

    void rewind(size_t mark) {
        while (defined.size() > mark) {
            int a = defined.back();
            defined.pop_back();
            imap[map[a]] = -1;
            map[a] = -1;
        }
    }

    bool assign(const std::vector<int>& gens, size_t gi) {
        if (gi == gens.size()) return (int)defined.size() == A.size();
        int g = gens[gi];
        if (map[g] >= 0) return assign(gens, gi + 1); // swallowed by earlier closure
        size_t mark = defined.size();
        for (int b = 0; b < B.size(); ++b) {
            if (imap[b] >= 0 || !candidates_match(g, b)) continue;
            if (extend(g, b) && assign(gens, gi + 1)) return true;
            rewind(mark);
        }
        return false;
    }
};

std::vector<std::array<int, 3>> element_invariants(const LoopTable& L) {
    int n = L.size();
    std::vector<std::array<int, 3>> inv(n);
    for (int x = 0; x < n; ++x) {
        int noncomm = 0;
        for (int y = 0; y < n; ++y)
            if (L.mul(x, y) != L.mul(y, x)) ++noncomm;
        int nonassoc = 0;
        for (int y = 0; y < n; ++y) {
            int xy = L.mul(x, y);
            for (int z = 0; z < n; ++z)
                if (L.mul(xy, z) != L.mul(x, L.mul(y, z))) ++nonassoc;
        }
        inv[x] = {element_order(L, x), noncomm, nonassoc};
    }
    return inv;
}

} // namespace

std::optional<std::vector<int>> find_isomorphism(const LoopTable& A, const LoopTable& B) {
    if (A.size() != B.size()) return std::nullopt;
    int n = A.size();
    if (!(fingerprint(A) == fingerprint(B))) return std::nullopt;

    IsoSearch s{A, B, std::vector<int>(n, -1), std::vector<int>(n, -1), {}, {}, {}};
    s.invA = element_invariants(A);
    s.invB = element_invariants(B);
    {
        auto ma = s.invA, mb = s.invB;
        std::sort(ma.begin(), ma.end());
        std::sort(mb.begin(), mb.end());
        if (ma != mb) return std::nullopt;
    }

    // greedy generating sequence: repeatedly adjoin the least outside element
    std::vector<int> gens;
    {
        std::vector<int> span{0};
        std::vector<char> in(n, 0);
        in[0] = 1;
        while ((int)span.size() < n) {
            int g = 0;
            while (in[g]) ++g;
            gens.push_back(g);
            std::vector<int> fresh{g};
            in[g] = 1;
            span.push_back(g);
            close_over(A, span, in, fresh);
        }
    }

    s.define(0, 0);
    if (!s.assign(gens, 0)) return std::nullopt;
    // full verification, independent of the propagation bookkeeping
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (s.map[A.mul(x, y)] != B.mul(s.map[x], s.map[y]))
                fail("Internal", "isomorphism candidate failed verification");
    return s.map;
}

bool is_isomorphic(const LoopTable& A, const LoopTable& B) {
    return find_isomorphism(A, B).has_value();
}

} // namespace moufang
