#pragma once

// Affine hyperplane arrangements over Q^d with oriented normals, exact
// chamber enumeration, boundedness, and rank-2 localizations. Orientations
// are data here: the two sides of a wall mean different things downstream,
// so normals are never sign-normalized.

#include "wallkit/errors.hpp"
#include "wallkit/ineq.hpp"
#include "wallkit/matrix.hpp"
#include "wallkit/rational.hpp"
#include "wallkit/torusdata.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace wallkit {

// { x : normal.x + offset = 0 }, stored with joint gcd 1, sign preserved.
struct Hyperplane {
    ZVec normal;
    Int offset;
};

using SignVector = std::vector<std::int8_t>;

struct Chamber {
    SignVector sign; // one entry per hyperplane, all nonzero
    QVec witness;
};

// wall is a geometric wall-class id: crossing it flips every coincident copy.
struct ChamberEdge {
    std::size_t from = 0, to = 0, wall = 0;
};

class Arrangement {
public:
    Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes)
        : dim_(dim), hyperplanes_(std::move(hyperplanes)) {
        for (auto& h : hyperplanes_) {
            if (h.normal.size() != dim_) throw InvalidInput("hyperplane arity does not match dimension");
            bool zero = true;
            for (const auto& x : h.normal)
                if (x != 0) { zero = false; break; }
            if (zero) throw ZeroNormal("hyperplane with zero normal");
            Int g = gcd_int(content(h.normal), h.offset);
            if (g > 1) {
                for (auto& x : h.normal) x /= g;
                h.offset /= g;
            }
        }
        build_classes();
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return hyperplanes_.size(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
    bool central() const {
        for (const auto& h : hyperplanes_)
            if (h.offset != 0) return false;
        return true;
    }

    // geometric wall classes: proportional (normal, offset) pairs merged
    std::size_t class_count() const { return class_rep_.size(); }
    const Hyperplane& class_rep(std::size_t c) const { return class_rep_[c]; }
    const std::vector<std::size_t>& class_members(std::size_t c) const { return class_members_[c]; }
    std::size_t class_of(std::size_t i) const { return class_of_[i]; }
    // +1 when hyperplane i is a positive multiple of its class representative
    int orientation(std::size_t i) const { return orient_[i]; }

    Rational value(std::size_t i, const QVec& x) const {
        return dot(to_rational(hyperplanes_[i].normal), x) + Rational(hyperplanes_[i].offset);
    }

    SignVector signs_at(const QVec& x) const {
        SignVector s(hyperplanes_.size());
        for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
            s[i] = static_cast<std::int8_t>(sgn(value(i, x)));
        return s;
    }

    // Expands class signs (one per class) to per-hyperplane signs.
    SignVector expand(const SignVector& class_sign) const {
        SignVector s(hyperplanes_.size());
        for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
            s[i] = static_cast<std::int8_t>(orient_[i] * class_sign[class_of_[i]]);
        return s;
    }

private:
    void build_classes() {
        std::map<std::vector<Int>, std::size_t> seen; // canonical (normal, offset) -> class
        class_of_.resize(hyperplanes_.size());
        orient_.resize(hyperplanes_.size());
        for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
            std::vector<Int> key = hyperplanes_[i].normal;
            key.push_back(hyperplanes_[i].offset);
            int o = 1;
            for (const auto& x : key)
                if (x != 0) {
                    if (x < 0) o = -1;
                    break;
                }
            if (o < 0)
                for (auto& x : key) x = -x;
            auto it = seen.find(key);
            std::size_t c;
            if (it == seen.end()) {
                c = class_rep_.size();
                seen.emplace(key, c);
                Hyperplane rep;
                rep.normal.assign(key.begin(), key.end() - 1);
                rep.offset = key.back();
                class_rep_.push_back(std::move(rep));
                class_members_.emplace_back();
            } else {
                c = it->second;
            }
            class_of_[i] = c;
            orient_[i] = o;
            class_members_[c].push_back(i);
        }
    }

    std::size_t dim_ = 0;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<std::size_t> class_of_;
    std::vector<int> orient_;
    std::vector<std::vector<std::size_t>> class_members_;
    std::vector<Hyperplane> class_rep_;
};

struct ChamberGraph {
    std::vector<Chamber> chambers;      // sorted by sign vector
    std::vector<ChamberEdge> edges;     // from < to, sorted

    std::size_t index_of(const SignVector& s) const {
        auto it = std::lower_bound(chambers.begin(), chambers.end(), s,
                                   [](const Chamber& c, const SignVector& t) { return c.sign < t; });
        if (it == chambers.end() || it->sign != s) throw std::logic_error("unknown chamber sign vector");
        return static_cast<std::size_t>(it - chambers.begin());
    }
};

namespace detail {

// Strict-sign feasibility for a prescribed class-sign vector.
inline IneqSystem class_sign_system(const Arrangement& arr, const SignVector& cs) {
    IneqSystem sys(arr.dim());
    for (std::size_t c = 0; c < arr.class_count(); ++c) {
        const auto& h = arr.class_rep(c);
        QVec coeffs(arr.dim());
        Rational constant(h.offset);
        for (std::size_t j = 0; j < arr.dim(); ++j) coeffs[j] = Rational(h.normal[j]);
        if (cs[c] < 0) {
            for (auto& x : coeffs) x = -x;
            constant = -constant;
        }
        sys.add(std::move(coeffs), std::move(constant), Relation::GT);
    }
    return sys;
}

// A point strictly off every hyperplane: moment curve evaluated past every
// root bound of the values n.p(t) + c.
inline QVec generic_seed(const Arrangement& arr) {
    Int bound = 1;
    for (std::size_t c = 0; c < arr.class_count(); ++c) {
        const auto& h = arr.class_rep(c);
        Int s = abs_int(h.offset);
        for (const auto& x : h.normal) s += abs_int(x);
        if (s >= bound) bound = s + 1;
    }
    QVec p(arr.dim());
    Rational t(bound), acc(1);
    for (std::size_t j = 0; j < arr.dim(); ++j) {
        acc *= t;
        p[j] = acc;
    }
    return p;
}

} // namespace detail

// All chambers (open regions) with exact witnesses, and the dual graph whose
// edges join chambers sharing a codimension-1 wall. Breadth-first search over
// single-class sign flips from a generic seed; a candidate flip is accepted
// only on exact feasibility. A cheap exact ray walk from the current witness
// settles most real neighbors before the elimination fallback runs.
inline ChamberGraph enumerate_chambers(const Arrangement& arr,
                                       std::size_t max_dim = kDefaultDimensionBound) {
    if (arr.dim() > max_dim) throw DimensionTooLarge("arrangement dimension exceeds the configured bound");
    ChamberGraph g;
    if (arr.size() == 0) {
        g.chambers.push_back({SignVector{}, QVec(arr.dim(), Rational(0))});
        return g;
    }

    const std::size_t ncls = arr.class_count();
    std::vector<QVec> class_normals(ncls);
    std::vector<Rational> class_offsets(ncls);
    for (std::size_t c = 0; c < ncls; ++c) {
        class_normals[c] = to_rational(arr.class_rep(c).normal);
        class_offsets[c] = Rational(arr.class_rep(c).offset);
    }
    auto class_value = [&](std::size_t c, const QVec& x) {
        return dot(class_normals[c], x) + class_offsets[c];
    };
    // gram[c][r] = n_c . n_r, the only directional data the ray walk needs
    std::vector<std::vector<Rational>> gram(ncls, std::vector<Rational>(ncls));
    for (std::size_t c = 0; c < ncls; ++c)
        for (std::size_t r = 0; r <= c; ++r)
            gram[c][r] = gram[r][c] = dot(class_normals[c], class_normals[r]);

    const QVec seed = detail::generic_seed(arr);
    SignVector seed_sign(ncls);
    for (std::size_t c = 0; c < ncls; ++c) {
        const int s = sgn(class_value(c, seed));
        if (s == 0) throw std::logic_error("seed point lies on a hyperplane");
        seed_sign[c] = static_cast<std::int8_t>(s);
    }

    std::map<SignVector, std::size_t> id_of;
    std::vector<SignVector> signs;
    std::vector<QVec> witnesses;
    std::deque<std::size_t> queue;
    std::set<std::array<std::size_t, 3>> edge_set;

    id_of.emplace(seed_sign, 0);
    signs.push_back(seed_sign);
    witnesses.push_back(seed);
    queue.push_back(0);

    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        // copies: pushes below may reallocate signs/witnesses
        const SignVector cur_sign = signs[cur];
        const QVec w = witnesses[cur];

        // values and their change rates along candidate ray directions
        QVec vals(ncls);
        for (std::size_t c = 0; c < ncls; ++c) vals[c] = class_value(c, w);

        for (std::size_t r = 0; r < ncls; ++r) {
            SignVector flipped = cur_sign;
            flipped[r] = static_cast<std::int8_t>(-flipped[r]);
            auto known = id_of.find(flipped);
            if (known != id_of.end()) {
                const std::size_t a = std::min(cur, known->second), b = std::max(cur, known->second);
                edge_set.insert({a, b, r});
                continue;
            }

            // ray walk: head straight at wall r from the witness, with
            // direction dir = -sign_r * n_r so rates come from the gram row
            const Rational t_hit = vals[r] / (Rational(cur_sign[r]) * gram[r][r]); // > 0
            bool conclusive = true;
            Rational t_other;
            bool has_other = false;
            for (std::size_t c = 0; c < ncls && conclusive; ++c) {
                if (c == r) continue;
                const Rational rate = -Rational(cur_sign[r]) * gram[c][r];
                if (sgn(rate) != -cur_sign[c]) continue; // moving away or parallel
                const Rational t_c = -vals[c] / rate;
                if (t_c <= t_hit) conclusive = false;
                else if (!has_other || t_c < t_other) { t_other = t_c; has_other = true; }
            }

            std::size_t nid;
            if (conclusive) {
                const Rational t_step = has_other ? Rational((t_hit + t_other) / 2)
                                                  : Rational(t_hit + 1);
                const Rational scale = -Rational(cur_sign[r]) * t_step;
                QVec w2(arr.dim());
                for (std::size_t j = 0; j < arr.dim(); ++j)
                    w2[j] = w[j] + scale * class_normals[r][j];
                for (std::size_t c = 0; c < ncls; ++c) {
                    if (sgn(class_value(c, w2)) != flipped[c]) { conclusive = false; break; }
                }
                if (conclusive) {
                    nid = signs.size();
                    id_of.emplace(flipped, nid);
                    signs.push_back(flipped);
                    witnesses.push_back(std::move(w2));
                    queue.push_back(nid);
                    edge_set.insert({std::min(cur, nid), std::max(cur, nid), r});
                    continue;
                }
            }

            const Feasibility f = feasible(detail::class_sign_system(arr, flipped), max_dim);
            if (!f.feasible) continue;
            nid = signs.size();
            id_of.emplace(flipped, nid);
            signs.push_back(flipped);
            witnesses.push_back(*f.witness);
            queue.push_back(nid);
            edge_set.insert({std::min(cur, nid), std::max(cur, nid), r});
        }
    }

    // canonical order: lexicographic in the expanded sign vector
    std::vector<std::size_t> order(signs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<SignVector> expanded(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) expanded[i] = arr.expand(signs[i]);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return expanded[x] < expanded[y]; });
    std::vector<std::size_t> new_id(signs.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) new_id[order[pos]] = pos;

    g.chambers.resize(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i)
        g.chambers[new_id[i]] = {expanded[i], witnesses[i]};
    for (const auto& e : edge_set) {
        ChamberEdge ce;
        ce.from = std::min(new_id[e[0]], new_id[e[1]]);
        ce.to = std::max(new_id[e[0]], new_id[e[1]]);
        ce.wall = e[2];
        g.edges.push_back(ce);
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const ChamberEdge& x, const ChamberEdge& y) {
        return std::tie(x.from, x.to, x.wall) < std::tie(y.from, y.to, y.wall);
    });
    return g;
}

// A chamber is bounded iff its recession cone { u : sign_c * n_c.u >= 0 } is
// trivial, i.e. no unit-coordinate slice of the cone is feasible.
inline bool chamber_bounded(const Arrangement& arr, const Chamber& ch,
                            std::size_t max_dim = kDefaultDimensionBound) {
    const std::size_t d = arr.dim();
    for (std::size_t j = 0; j < d; ++j) {
        for (int s : {1, -1}) {
            IneqSystem sys(d);
            for (std::size_t c = 0; c < arr.class_count(); ++c) {
                const auto& h = arr.class_rep(c);
                QVec coeffs(d);
                const int sign = ch.sign[arr.class_members(c).front()] * arr.orientation(arr.class_members(c).front());
                for (std::size_t t = 0; t < d; ++t) coeffs[t] = Rational(sign) * Rational(h.normal[t]);
                sys.add(std::move(coeffs), Rational(0), Relation::GE);
            }
            QVec e(d, Rational(0));
            e[j] = 1;
            sys.add(std::move(e), Rational(-s), Relation::EQ); // u_j = s
            if (feasible(sys, max_dim).feasible) return false;
        }
    }
    return true;
}

inline std::vector<std::size_t> bounded_chambers(const Arrangement& arr, const ChamberGraph& g,
                                                 std::size_t max_dim = kDefaultDimensionBound) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.chambers.size(); ++i)
        if (chamber_bounded(arr, g.chambers[i], max_dim)) out.push_back(i);
    return out;
}

// A codimension-2 face of a central arrangement: a connected piece of a
// rank-2 flat, with the cyclic fan of chambers around it.
struct Codim2Face {
    SignVector rest_sign;             // per class; 0 on the localization walls
    QVec flat_point;                  // relative-interior point of the face
    std::vector<std::size_t> cycle;   // 2p chamber ids, counterclockwise
};

struct Localization {
    std::vector<std::size_t> walls;    // class ids through the flat, sorted
    std::vector<std::size_t> crossing; // crossing[t]: wall between cycle[t] and cycle[t+1]
    std::vector<Codim2Face> faces;
};

inline std::vector<Localization> codim2_faces(const Arrangement& arr, const ChamberGraph& graph,
                                              std::size_t max_dim = kDefaultDimensionBound) {
    if (!arr.central()) throw InvalidInput("codimension-2 localization expects a central arrangement");
    const std::size_t d = arr.dim(), ncls = arr.class_count();
    std::vector<Localization> out;
    if (d < 2) return out;

    std::map<SignVector, std::size_t> chamber_ids;
    for (std::size_t i = 0; i < graph.chambers.size(); ++i)
        chamber_ids.emplace(graph.chambers[i].sign, i);

    std::set<std::vector<std::size_t>> seen;
    for (std::size_t r = 0; r < ncls; ++r)
        for (std::size_t s = r + 1; s < ncls; ++s) {
            MatQ pair(2, d);
            for (std::size_t j = 0; j < d; ++j) {
                pair(0, j) = Rational(arr.class_rep(r).normal[j]);
                pair(1, j) = Rational(arr.class_rep(s).normal[j]);
            }
            if (rank(pair) != 2) continue;
            // all classes whose normal lies in the rank-2 span
            std::vector<std::size_t> walls;
            std::vector<std::pair<Rational, Rational>> plane_coords;
            for (std::size_t t = 0; t < ncls; ++t) {
                const auto sol = solve(pair.transposed(), to_rational(arr.class_rep(t).normal));
                if (!sol) continue;
                walls.push_back(t);
                plane_coords.emplace_back((*sol)[0], (*sol)[1]);
            }
            if (!seen.insert(walls).second) continue;

            Localization loc;
            loc.walls = walls;
            const std::size_t p = walls.size();

            // rays of the localized rank-2 picture, sorted counterclockwise
            struct Ray {
                Int x, y;
                std::size_t wall_pos; // index into walls
            };
            std::vector<Ray> rays;
            for (std::size_t t = 0; t < p; ++t) {
                const ZVec nt = primitive(QVec{plane_coords[t].first, plane_coords[t].second});
                rays.push_back({-nt[1], nt[0], t});
                rays.push_back({nt[1], -nt[0], t});
            }
            auto half = [](const Ray& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
            std::sort(rays.begin(), rays.end(), [&](const Ray& u, const Ray& v) {
                if (half(u) != half(v)) return half(u) < half(v);
                const Int cr = u.x * v.y - u.y * v.x;
                if (cr != 0) return cr > 0;
                return u.wall_pos < v.wall_pos;
            });

            // sector t sits between rays t and t+1; crossing into sector t+1
            // passes the wall of ray t+1
            const std::size_t nsec = 2 * p;
            std::vector<SignVector> sector_sign(nsec, SignVector(p));
            loc.crossing.resize(nsec);
            for (std::size_t t = 0; t < nsec; ++t) {
                const Ray& u = rays[t];
                const Ray& v = rays[(t + 1) % nsec];
                const Int sx = u.x + v.x, sy = u.y + v.y;
                for (std::size_t q = 0; q < p; ++q) {
                    const Rational val = plane_coords[q].first * Rational(sx) + plane_coords[q].second * Rational(sy);
                    if (val == 0) throw std::logic_error("sector direction lies on a localized wall");
                    sector_sign[t][q] = static_cast<std::int8_t>(sgn(val));
                }
                loc.crossing[t] = walls[v.wall_pos];
            }

            // faces: chambers of the arrangement restricted to the flat
            MatZ span(2, d);
            for (std::size_t j = 0; j < d; ++j) {
                span(0, j) = arr.class_rep(r).normal[j];
                span(1, j) = arr.class_rep(s).normal[j];
            }
            const MatZ basis = kernel_lattice(span); // d x (d-2)
            std::vector<Hyperplane> traces;
            std::vector<std::size_t> trace_class;
            for (std::size_t t = 0; t < ncls; ++t) {
                if (std::binary_search(walls.begin(), walls.end(), t)) continue;
                ZVec tr(basis.cols(), Int(0));
                for (std::size_t j = 0; j < basis.cols(); ++j)
                    for (std::size_t i2 = 0; i2 < d; ++i2)
                        tr[j] += arr.class_rep(t).normal[i2] * basis(i2, j);
                bool zero = true;
                for (const auto& x : tr)
                    if (x != 0) { zero = false; break; }
                if (zero) throw std::logic_error("localization set is not maximal");
                traces.push_back({std::move(tr), Int(0)});
                trace_class.push_back(t);
            }

            std::vector<std::pair<QVec, SignVector>> face_data; // flat point, rest signs
            if (traces.empty()) {
                face_data.emplace_back(QVec(d, Rational(0)), SignVector(ncls, 0));
            } else {
                Arrangement restricted(basis.cols(), traces);
                ChamberGraph rg = enumerate_chambers(restricted, max_dim);
                for (const auto& rc : rg.chambers) {
                    QVec pointd(d, Rational(0));
                    for (std::size_t i2 = 0; i2 < d; ++i2)
                        for (std::size_t j = 0; j < basis.cols(); ++j)
                            pointd[i2] += Rational(basis(i2, j)) * rc.witness[j];
                    SignVector rest(ncls, 0);
                    for (std::size_t q = 0; q < traces.size(); ++q) {
                        // restricted arrangement may merge repeated traces; read
                        // the sign off the restricted chamber entry directly
                        rest[trace_class[q]] = rc.sign[q];
                    }
                    face_data.emplace_back(std::move(pointd), std::move(rest));
                }
            }

            for (auto& [fpoint, rest] : face_data) {
                Codim2Face face;
                face.rest_sign = rest;
                face.flat_point = fpoint;
                face.cycle.resize(nsec);
                for (std::size_t t = 0; t < nsec; ++t) {
                    SignVector full(ncls);
                    for (std::size_t c = 0; c < ncls; ++c) full[c] = rest[c];
                    for (std::size_t q = 0; q < p; ++q) full[walls[q]] = sector_sign[t][q];
                    auto it = chamber_ids.find(arr.expand(full));
                    if (it == chamber_ids.end())
                        throw std::logic_error("sector sign pattern does not match any chamber");
                    face.cycle[t] = it->second;
                }
                loc.faces.push_back(std::move(face));
            }
            out.push_back(std::move(loc));
        }
    return out;
}

// Hyperplane i of the character's arrangement: <x, a_i> + lift_i = 0 in the
// quotient weight space.
inline Arrangement build_eta_arrangement(const TorusData& td, const Character& ch) {
    if (ch.lift.size() != td.n()) throw InvalidInput("character lift arity does not match datum");
    std::vector<Hyperplane> hps;
    hps.reserve(td.n());
    for (std::size_t i = 0; i < td.n(); ++i) hps.push_back({td.a_column(i), ch.lift[i]});
    return Arrangement(td.quotient_rank(), std::move(hps));
}

} // namespace wallkit
