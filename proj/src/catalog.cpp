#include "moufang/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace moufang {

namespace {

LoopTable cyclic(int n) {
    std::vector<int> cells(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells[i * n + j] = (i + j) % n;
    return LoopTable::from_grid(n, std::move(cells));
}

LoopTable elementary_abelian(int n) {
    // n must be a power of two; the table is XOR on 0..n-1
    std::vector<int> cells(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells[i * n + j] = i ^ j;
    return LoopTable::from_grid(n, std::move(cells));
}

// order 2n: rotations r^i at 0..n-1, reflections s r^i at n..2n-1
LoopTable dihedral(int n) {
    int sz = 2 * n;
    auto idx = [&](int flip, int rot) { return flip * n + ((rot % n + n) % n); };
    std::vector<int> cells(sz * sz);
    for (int e = 0; e < 2; ++e)
        for (int i = 0; i < n; ++i)
            for (int f = 0; f < 2; ++f)
                for (int j = 0; j < n; ++j) {
                    int v = e == 0 ? (f == 0 ? idx(0, i + j) : idx(1, j - i))
                                   : (f == 0 ? idx(1, i + j) : idx(0, j - i));
                    cells[idx(e, i) * sz + idx(f, j)] = v;
                }
    return LoopTable::from_grid(sz, std::move(cells));
}

// order 2^k >= 8: a^i at 0..h-1 (h = 2^{k-1}), a^i b at h..2h-1,
// with b^2 = a^{h/2} and b a b^{-1} = a^{-1}
LoopTable quaternion(int sz) {
    int h = sz / 2;
    auto rot = [&](int i) { return (i % h + h) % h; };
    std::vector<int> cells(sz * sz);
    for (int e = 0; e < 2; ++e)
        for (int i = 0; i < h; ++i)
            for (int f = 0; f < 2; ++f)
                for (int j = 0; j < h; ++j) {
                    int v;
                    if (e == 0 && f == 0) v = rot(i + j);
                    else if (e == 0) v = h + rot(i + j);
                    else if (f == 0) v = h + rot(i - j);
                    else v = rot(i - j + h / 2);
                    cells[(e * h + i) * sz + (f * h + j)] = v;
                }
    return LoopTable::from_grid(sz, std::move(cells));
}

LoopTable alternating4() {
    // even permutations of {0,1,2,3} in lexicographic order; identity first
    std::vector<std::array<int, 4>> perms;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        if (inv % 2 == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = (int)perms.size();
    auto find = [&](const std::array<int, 4>& q) {
        return (int)(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<int> cells(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::array<int, 4> q;
            for (int t = 0; t < 4; ++t) q[t] = perms[i][perms[j][t]];
            cells[i * n + j] = find(q);
        }
    return LoopTable::from_grid(n, std::move(cells));
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit((unsigned char)c)) return false;
    out = std::stoi(s);
    return true;
}

LoopTable builtin_atom(const std::string& name) {
    if (name == "a4") return alternating4();
    if (name == "v4" || name == "d4") return elementary_abelian(4);
    if (name == "g16_gamma2c1") {
        // <a,b | a^4 = b^4 = (ab)^2 = [a^2,b] = 1>
        Presentation pr;
        pr.generators = 2;
        pr.relators = {{1, 1, 1, 1},
                       {2, 2, 2, 2},
                       {1, 2, 1, 2},
                       {-1, -1, -2, 1, 1, 2}};
        return group_from_presentation(pr);
    }
    int n;
    if (name.size() > 1 && parse_int(name.substr(1), n)) {
        switch (name[0]) {
        case 'c':
            if (n >= 1) return cyclic(n);
            break;
        case 'e':
            if (n >= 2 && (n & (n - 1)) == 0) return elementary_abelian(n);
            break;
        case 'd':
            if (n >= 6 && n % 2 == 0) return dihedral(n / 2);
            break;
        case 'q':
            if (n >= 8 && (n & (n - 1)) == 0) return quaternion(n);
            break;
        }
    }
    fail("UnknownName", "no builtin table named '" + name + "'");
}

} // namespace

LoopTable builtin(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back((char)std::tolower((unsigned char)c));
    std::vector<std::string> parts;
    std::string cur;
    for (size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] == 'x') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += lower[i];
        }
    }
    parts.push_back(cur);
    LoopTable t = builtin_atom(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i) t = direct_product(t, builtin_atom(parts[i]));
    return t;
}

std::vector<std::string> builtin_names() {
    return {"c<n>",  "e<2^k>", "v4", "d4 (alias of v4)", "d<2n> (dihedral of order 2n >= 6)",
            "q<2^k> (generalized quaternion, order >= 8)", "a4", "g16_gamma2c1",
            "products joined with x, e.g. d8xc2"};
}

// ---------------------------------------------------------------------------
// coset enumeration (HLT with coincidences) over the trivial subgroup

namespace {

struct Enumerator {
    int nsym;
    std::vector<std::vector<int>> tab; // tab[c][s], -1 undefined
    std::vector<int> parent;           // union-find
    int live = 0;
    int bound;
    bool merged_this_pass = false;

    explicit Enumerator(int ngens, int bound_) : nsym(2 * ngens), bound(bound_) {
        new_coset();
    }

    int find(int c) {
        while (parent[c] != c) c = parent[c] = parent[parent[c]];
        return c;
    }

    int new_coset() {
        if ((int)tab.size() >= bound)
            fail("EnumerationOverflow", "coset table exceeded " + std::to_string(bound));
        tab.emplace_back(nsym, -1);
        parent.push_back((int)parent.size());
        ++live;
        return (int)tab.size() - 1;
    }

    static int inverse_symbol(int s) { return s ^ 1; }

    void join(int a, int s, int b) {
        a = find(a);
        b = find(b);
        int ex = tab[a][s];
        if (ex >= 0 && find(ex) != b) coincide(find(ex), b);
        a = find(a);
        b = find(b);
        tab[a][s] = b;
        int rx = tab[b][inverse_symbol(s)];
        if (rx >= 0 && find(rx) != a) coincide(find(rx), a);
        a = find(a);
        b = find(b);
        tab[a][s] = b;
        tab[b][inverse_symbol(s)] = a;
    }

    void coincide(int a, int b) {
        std::vector<std::pair<int, int>> queue{{a, b}};
        while (!queue.empty()) {
            auto [x, y] = queue.back();
            queue.pop_back();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (x > y) std::swap(x, y);
            parent[y] = x;
            --live;
            merged_this_pass = true;
            for (int s = 0; s < nsym; ++s) {
                int d = tab[y][s];
                if (d < 0) continue;
                if (tab[x][s] < 0) tab[x][s] = d;
                else if (find(tab[x][s]) != find(d)) queue.push_back({tab[x][s], d});
            }
        }
        for (int c = 0; c < (int)tab.size(); ++c) {
            if (find(c) != c) continue;
            for (int s = 0; s < nsym; ++s)
                if (tab[c][s] >= 0) tab[c][s] = find(tab[c][s]);
        }
    }

    void scan_and_fill(int c, const std::vector<int>& word) {
        int f = find(c), b = f;
        int i = 0, j = (int)word.size();
        while (true) {
            while (i < j && tab[f][word[i]] >= 0) f = find(tab[f][word[i]]), ++i;
            if (i == j) {
                if (f != b) coincide(f, b);
                return;
            }
            while (j > i && tab[b][inverse_symbol(word[j - 1])] >= 0)
                b = find(tab[b][inverse_symbol(word[j - 1])]), --j;
            if (j == i) {
                if (f != b) coincide(f, b);
                return;
            }
            if (j == i + 1) {
                join(f, word[i], b);
                return;
            }
            int d = new_coset();
            join(f, word[i], d);
            f = find(d);
            b = find(b);
            ++i;
        }
    }
};

} // namespace

LoopTable group_from_presentation(const Presentation& pr, int max_cosets) {
    if (pr.generators < 1) fail("InvalidParams", "presentation needs at least one generator");
    std::vector<std::vector<int>> words;
    for (const auto& rel : pr.relators) {
        std::vector<int> w;
        for (int g : rel) {
            if (g == 0 || std::abs(g) > pr.generators)
                fail("InvalidParams", "relator letter out of range");
            w.push_back(g > 0 ? 2 * (g - 1) : 2 * (-g - 1) + 1);
        }
        words.push_back(std::move(w));
    }

    Enumerator en(pr.generators, max_cosets);
    bool again = true;
    while (again) {
        en.merged_this_pass = false;
        size_t defined_before = en.tab.size();
        for (int c = 0; c < (int)en.tab.size(); ++c) {
            if (en.find(c) != c) continue;
            for (const auto& w : words) {
                en.scan_and_fill(c, w);
                if (en.find(c) != c) break; // c died in a coincidence
            }
            if (en.find(c) != c) continue;
            for (int s = 0; s < en.nsym; ++s)
                if (en.tab[en.find(c)][s] < 0) en.join(en.find(c), s, en.new_coset());
        }
        again = en.merged_this_pass || en.tab.size() != defined_before;
    }

    // compact live cosets; the root of coset 0 stays 0, hence identity first
    std::vector<int> label(en.tab.size(), -1);
    int n = 0;
    for (int c = 0; c < (int)en.tab.size(); ++c)
        if (en.find(c) == c) label[c] = n++;
    std::vector<std::vector<int>> act(n, std::vector<int>(en.nsym));
    for (int c = 0; c < (int)en.tab.size(); ++c) {
        if (en.find(c) != c) continue;
        for (int s = 0; s < en.nsym; ++s) {
            int d = en.tab[c][s];
            if (d < 0) fail("Internal", "incomplete coset table after closure");
            act[label[c]][s] = label[en.find(d)];
        }
    }

    // representative word per element via BFS from the identity coset
    std::vector<std::vector<int>> word(n);
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    std::vector<int> bfs{0};
    for (size_t head = 0; head < bfs.size(); ++head) {
        int c = bfs[head];
        for (int s = 0; s < en.nsym; ++s) {
            int d = act[c][s];
            if (!seen[d]) {
                seen[d] = 1;
                word[d] = word[c];
                word[d].push_back(s);
                bfs.push_back(d);
            }
        }
    }

    std::vector<int> cells(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int c = a;
            for (int s : word[b]) c = act[c][s];
            cells[a * n + b] = c;
        }
    LoopTable t = LoopTable::from_grid(n, std::move(cells));
    if (!is_associative(t)) fail("Internal", "presented table is not associative");
    for (int x = 0; x < n; ++x)
        for (const auto& w : words) {
            int c = x;
            for (int s : w) c = act[c][s];
            if (c != x) fail("Internal", "relator fails on the final table");
        }
    return t;
}

// ---------------------------------------------------------------------------
// table I/O

LoopTable read_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail("ParseError", "empty input");
    std::istringstream head(line);
    long long n;
    std::string extra;
    if (!(head >> n) || (head >> extra)) fail("ParseError", "first line must be the order alone");
    if (n < 1 || n > 4096) fail("ParseError", "unreasonable order " + std::to_string(n));
    std::vector<int> cells;
    cells.reserve((size_t)n * n);
    for (long long r = 0; r < n; ++r) {
        if (!std::getline(in, line)) fail("ParseError", "missing row " + std::to_string(r));
        std::istringstream row(line);
        long long v;
        for (long long c = 0; c < n; ++c) {
            if (!(row >> v)) fail("ParseError", "row " + std::to_string(r) + " is too short");
            if (v < 0 || v >= n)
                fail("ParseError", "entry out of range in row " + std::to_string(r));
            cells.push_back((int)v);
        }
        if (row >> extra) fail("ParseError", "trailing data in row " + std::to_string(r));
    }
    while (std::getline(in, line)) {
        for (char c : line)
            if (!std::isspace((unsigned char)c)) fail("ParseError", "trailing data after table");
    }
    return LoopTable::from_grid((int)n, std::move(cells));
}

void write_table(std::ostream& out, const LoopTable& t) {
    out << t.size() << '\n';
    for (int r = 0; r < t.size(); ++r) {
        for (int c = 0; c < t.size(); ++c) {
            if (c) out << ' ';
            out << t.mul(r, c);
        }
        out << '\n';
    }
}

LoopTable read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open " + path);
    return read_table(in);
}

void write_table_file(const std::string& path, const LoopTable& t) {
    std::ofstream out(path);
    if (!out) fail("IoError", "cannot open " + path + " for writing");
    write_table(out, t);
    if (!out) fail("IoError", "write failed for " + path);
}

} // namespace moufang
