#include "paving/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace paving {

namespace {

using nlohmann::ordered_json;

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

std::string digits(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += static_cast<char>('0' + x);
    return s;
}

std::string kh_label(const SubspaceParams& p) { return digits(p.k) + "|" + digits(p.h); }

std::string dims_cell(const SubspaceReport& s) {
    return std::to_string(s.dims->dim_x) + "," + std::to_string(s.dims->dim_y);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

ordered_json poly_json(const PoincarePolynomial& p) {
    ordered_json j;
    j["text"] = p.poly.to_string();
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : p.poly.coefficients()) coeffs.push_back(c.str());
    j["coefficients"] = coeffs;
    j["samples"] = p.samples;
    j["holdouts"] = p.holdouts;
    j["consistent"] = p.consistent;
    j["nonneg_integer_coeffs"] = p.nonneg_integer_coeffs;
    return j;
}

ordered_json cell_json(CaseId id, const CellReport& c) {
    ordered_json j;
    j["cell"] = c.index.label(id);
    j["dim"] = c.cell_dim;
    j["class"] = to_string(c.cls);
    j["affine_dim"] = c.affine_dim;
    ordered_json counts = ordered_json::object();
    for (auto [q, n] : c.counts) counts[std::to_string(q)] = n;
    j["counts"] = counts;
    if (c.witness) j["witness"] = {{"q", c.witness->first}, {"count", c.witness->second}};
    j["elimination"] = {{"outcome", to_string(c.elimination.outcome)}, {"dim", c.elimination.dim}, {"trace", c.elimination.trace}};
    return j;
}

bool cells_resolved(const std::vector<CellReport>& cells) {
    return std::all_of(cells.begin(), cells.end(), [](const CellReport& c) {
        using O = Elimination::Outcome;
        if (c.cls == CellClass::NotAffine) return false;
        return c.cls == CellClass::Empty ? c.elimination.outcome == O::Empty
                                         : c.elimination.outcome == O::Affine && c.elimination.dim == c.affine_dim;
    });
}

const std::string blowup_label = "100|200|2";

}  // namespace

void RunConfig::validate() const {
    if (cases.empty()) throw ConfigError("no case selected");
    if (jobs < 1) throw ConfigError("--jobs must be positive");
    if (trials < 1) throw ConfigError("--trials must be positive");
    std::set<int> seen;
    for (const auto* list : {&primes, &holdouts})
        for (int q : *list) {
            if (!is_prime(q)) throw ConfigError(std::to_string(q) + " is not prime");
            if (!seen.insert(q).second) throw ConfigError("prime " + std::to_string(q) + " given twice");
        }
}

std::vector<int> RunConfig::primes_for(CaseId id) const { return primes.empty() ? default_primes(id) : primes; }

std::vector<int> RunConfig::holdouts_for() const { return holdouts.empty() ? default_holdouts : holdouts; }

std::string Table::key(const std::vector<std::string>& row) const {
    std::string k;
    for (int i = 0; i < key_columns && i < static_cast<int>(row.size()); ++i) k += (i ? " l=" : "") + row[static_cast<std::size_t>(i)];
    return k;
}

const std::vector<std::string>* Table::find(const std::string& k) const {
    for (const auto& row : rows)
        if (key(row) == k) return &row;
    return nullptr;
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os << ',';
            const auto& f = fields[i];
            if (f.find_first_of(",\"\n") == std::string::npos) {
                os << f;
                continue;
            }
            os << '"';
            for (char c : f) os << (c == '"' ? "\"\"" : std::string(1, c));
            os << '"';
        }
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return os.str();
}

Table parse_csv(std::string_view text, std::string name, int key_columns) {
    Table t{std::move(name), key_columns, {}, {}};
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            (t.header.empty() ? t.header : t.rows.emplace_back()) = std::move(row);
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
            any = true;
        }
    }
    if (quoted) throw ConfigError("unterminated quote in " + t.name);
    if (any || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        (t.header.empty() ? t.header : t.rows.emplace_back()) = std::move(row);
    }
    for (const auto& r : t.rows)
        if (r.size() != t.header.size()) throw ConfigError("ragged row in " + t.name);
    return t;
}

std::vector<Discrepancy> diff_tables(const Table& golden, const Table& computed) {
    std::vector<Discrepancy> out;
    const std::string& n = golden.name;
    if (golden.header != computed.header) {
        out.push_back({n + " header", to_csv({n, 0, golden.header, {}}), to_csv({n, 0, computed.header, {}})});
        return out;
    }
    for (const auto& g : golden.rows) {
        const auto k = golden.key(g);
        const auto* c = computed.find(k);
        if (!c) {
            out.push_back({n + " row " + k, "present", "missing"});
            continue;
        }
        for (std::size_t i = static_cast<std::size_t>(golden.key_columns); i < g.size(); ++i)
            if (g[i] != (*c)[i]) out.push_back({n + " row " + k + " " + golden.header[i], g[i], (*c)[i]});
    }
    for (const auto& c : computed.rows)
        if (!golden.find(computed.key(c))) out.push_back({n + " row " + computed.key(c), "absent", "present"});
    return out;
}

const SubspaceReport& CaseReport::at(const SubspaceParams& p) const {
    for (const auto& s : subspaces)
        if (s.params == p) return s;
    throw std::out_of_range("no subspace " + p.label() + " in the report");
}

CaseReport analyze_case(CaseId id, const RunConfig& config) {
    config.validate();
    const auto& model = CaseModel::get(id);
    CaseReport r;
    r.id = id;
    r.primes = config.primes_for(id);
    r.holdouts = config.holdouts_for();

    const OrbitSearch opts{config.trials, 100, config.seed};
    const auto inventory = build_inventory(id, opts);
    r.graph = build_graph(inventory, config.jobs);

    Index top = 0;
    for (const auto& e : inventory) top = std::max(top, e.subspace.dim());
    const auto need = static_cast<std::size_t>(top - model.borel_dim() + 1);
    if (r.primes.size() + r.holdouts.size() < need)
        throw ConfigError(to_string(id) + " needs at least " + std::to_string(need) + " primes in --primes and --holdout");

    PointCounter counter(id, config.jobs);
    auto flag = [&](const SubspaceParams& p, std::string what, std::string expected, std::string actual) {
        r.discrepancies.push_back({to_string(id) + " " + p.label() + " " + what, std::move(expected), std::move(actual)});
    };

    for (std::size_t i = 0; i < inventory.size(); ++i) {
        const auto& e = inventory[i];
        if (!(r.graph.vertices[i].params == e.subspace.params)) throw std::logic_error("graph and inventory out of step");
        SubspaceReport s;
        s.params = e.subspace.params;
        s.dim_u = e.subspace.dim();
        s.nonempty = e.nonempty;
        s.dims = e.dims;
        s.component = r.graph.component_of(i);
        const int bound = std::max<int>(0, static_cast<int>(s.dim_u - model.borel_dim()));
        s.poly = poincare(counter, s.params, r.primes, r.holdouts, bound);
        for (int q : s.poly.samples) s.counts[q] = counter.count(s.params, q);
        for (int q : s.poly.holdouts) s.counts[q] = counter.count(s.params, q);

        if (!s.poly.consistent) flag(s.params, "holdout", "on the polynomial", "off the polynomial");
        if (!s.poly.nonneg_integer_coeffs) flag(s.params, "coefficients", "nonnegative integers", s.poly.poly.to_string());
        if (s.poly.poly.is_zero() == s.nonempty)
            flag(s.params, "emptiness", s.nonempty ? "points" : "no points", s.poly.poly.to_string());
        if (s.nonempty && s.poly.degree() != s.dims->dim_x)
            flag(s.params, "degree", std::to_string(s.dims->dim_x), std::to_string(s.poly.degree()));

        const auto at2 = counter.count(s.params, 2);
        const auto predicted = s.poly.poly(Rational(2));
        if (predicted != Rational(static_cast<long long>(at2))) r.bad_reduction.push_back({s.params, at2, predicted});

        if (!s.nonempty) {
            s.paving = "empty";
        } else if (s.dims->dim_y <= 2) {
            s.paving = "dim<=2";
        } else {
            try {
                auto cells = check_affine_paving(id, s.params, cell_primes);
                s.paving = cells_resolved(cells) ? "cells" : "unresolved";
                r.cells[s.params.label()] = std::move(cells);
            } catch (const std::logic_error& ex) {
                s.paving = "unresolved";
                flag(s.params, "cell sum", "count_points", ex.what());
            }
        }
        r.subspaces.push_back(std::move(s));
    }

    if (id == CaseId::E7a5) {
        const std::vector<int> primes{2, 3, 5, 7};
        try {
            r.blowup = verify_blowup_case(primes);
            if (!r.blowup->cells_match) flag(r.blowup->params, "blow-up cells", "blowup_count", "mismatch");
        } catch (const std::logic_error& ex) {
            flag(SubspaceParams::parse(id, blowup_label), "blow-up identity", "|X| = |Z| + q|L|", ex.what());
        }
        for (auto& s : r.subspaces)
            if (s.paving == "unresolved" && s.params.label() == blowup_label && r.blowup && r.blowup->cells_match)
                s.paving = "blow-up";
    }
    for (const auto& s : r.subspaces)
        if (s.paving == "unresolved") flag(s.params, "paving", "affine cells", "unresolved");
    return r;
}

std::vector<Table> report_tables(const CaseReport& r) {
    const bool a4 = r.id == CaseId::E7a4;
    const int first = a4 ? 1 : 3;
    std::vector<Table> out;
    for (std::size_t c = 0; c < r.graph.components.size(); ++c) {
        Table t;
        t.name = "table" + std::to_string(first + static_cast<int>(c));
        t.key_columns = a4 ? 2 : 1;
        t.header = a4 ? std::vector<std::string>{"k|h", "l", "m=3", "m=2", "m=1"}
                      : std::vector<std::string>{"k|h", "l=3", "l=2", "l=1"};

        // row key -> (largest dim X, representative)
        std::map<std::string, std::pair<int, SubspaceParams>> rows;
        for (const auto& s : r.subspaces) {
            if (s.component != c) continue;
            const auto key = a4 ? kh_label(s.params) + " l=" + std::to_string(s.params.l) : kh_label(s.params);
            auto [it, fresh] = rows.try_emplace(key, s.dims->dim_x, s.params);
            if (!fresh) it->second.first = std::max(it->second.first, s.dims->dim_x);
        }
        std::vector<std::pair<std::string, std::pair<int, SubspaceParams>>> order(rows.begin(), rows.end());
        std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second.first > y.second.first; });

        for (const auto& [key, v] : order) {
            SubspaceParams p = v.second;
            std::vector<std::string> row{kh_label(p)};
            if (a4) row.push_back(std::to_string(p.l));
            for (int col = 3; col >= 1; --col) {
                (a4 ? p.m : p.l) = col;
                const auto idx = r.graph.find(p);
                if (!idx) {
                    row.push_back("-");
                    continue;
                }
                const auto& s = r.subspaces[*idx];
                row.push_back(!s.nonempty ? "E" : s.component == c ? dims_cell(s) : "-");
            }
            t.rows.push_back(std::move(row));
        }
        out.push_back(std::move(t));
    }
    if (!a4) {
        Table t{"table6", 1, {"U", "delta"}, {}};
        for (const auto& s : r.subspaces)
            if (s.nonempty && s.dims->dim_y >= 3) t.rows.push_back({s.params.label(), std::to_string(s.dims->dim_y)});
        out.push_back(std::move(t));
    }
    return out;
}

std::string report_json(const CaseReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["case"] = to_string(r.id);
    j["primes"] = r.primes;
    j["holdouts"] = r.holdouts;

    ordered_json comps = ordered_json::array();
    for (std::size_t c = 0; c < r.graph.components.size(); ++c) {
        std::string constant;
        for (const auto& s : r.subspaces)
            if (s.component == c) constant = s.poly.constant_term().str();
        comps.push_back({{"index", c + 1}, {"size", r.graph.components[c].size()}, {"components_assuming_paving", constant}});
    }
    j["graph"] = {{"vertices", r.graph.vertices.size()}, {"edges", r.graph.edges.size()}, {"mixed_edges", r.graph.mixed_edges},
                  {"components", comps}};

    ordered_json subs = ordered_json::array();
    for (const auto& s : r.subspaces) {
        ordered_json e;
        e["params"] = s.params.label();
        e["dim_u"] = s.dim_u;
        e["nonempty"] = s.nonempty;
        if (s.dims) {
            e["dim_x"] = s.dims->dim_x;
            e["dim_y"] = s.dims->dim_y;
        }
        if (s.component) e["component"] = *s.component + 1;
        e["polynomial"] = poly_json(s.poly);
        ordered_json counts = ordered_json::object();
        for (auto [q, n] : s.counts) counts[std::to_string(q)] = n;
        e["counts"] = counts;
        if (s.nonempty) e["components_assuming_paving"] = s.poly.constant_term().str();
        e["paving"] = s.paving;
        subs.push_back(e);
    }
    j["subspaces"] = subs;

    ordered_json cells = ordered_json::object();
    for (const auto& [label, list] : r.cells) {
        ordered_json a = ordered_json::array();
        for (const auto& c : list) a.push_back(cell_json(r.id, c));
        cells[label] = a;
    }
    j["cells"] = cells;
    if (r.blowup) j["blowup"] = ordered_json::parse(blowup_json(*r.blowup));

    ordered_json bad = ordered_json::array();
    for (const auto& b : r.bad_reduction)
        bad.push_back({{"params", b.params.label()}, {"q", 2}, {"count", b.count}, {"polynomial_value", b.predicted.str()}});
    j["bad_reduction"] = bad;

    ordered_json disc = ordered_json::array();
    for (const auto& d : r.discrepancies) disc.push_back({{"where", d.where}, {"expected", d.expected}, {"actual", d.actual}});
    j["discrepancies"] = disc;
    return j.dump(2) + "\n";
}

std::string polynomials_json(const CaseReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["case"] = to_string(r.id);
    ordered_json polys = ordered_json::object();
    for (const auto& s : r.subspaces) polys[s.params.label()] = s.poly.poly.to_string();
    j["polynomials"] = polys;
    return j.dump(2) + "\n";
}

std::vector<Discrepancy> compare_golden(const CaseReport& r, const std::filesystem::path& golden) {
    std::vector<Discrepancy> out;
    const auto dir = golden / to_string(r.id);
    for (const auto& t : report_tables(r)) {
        const auto path = dir / (t.name + ".csv");
        if (!std::filesystem::exists(path)) {
            out.push_back({path.string(), "golden table", "missing"});
            continue;
        }
        const auto g = parse_csv(read_file(path), t.name, t.key_columns);
        for (auto& d : diff_tables(g, t)) out.push_back({to_string(r.id) + " " + d.where, d.expected, d.actual});
    }
    const auto ppath = dir / "polynomials.json";
    if (std::filesystem::exists(ppath)) {
        ordered_json g;
        try {
            g = ordered_json::parse(read_file(ppath)).at("polynomials");
        } catch (const nlohmann::json::exception& ex) {
            throw ConfigError(ppath.string() + ": " + ex.what());
        }
        const auto computed = ordered_json::parse(polynomials_json(r)).at("polynomials");
        for (const auto& [label, text] : g.items()) {
            const auto it = computed.find(label);
            const std::string actual = it == computed.end() ? "absent" : it->get<std::string>();
            if (actual != text.get<std::string>()) out.push_back({to_string(r.id) + " polynomial " + label, text.get<std::string>(), actual});
        }
        for (const auto& [label, text] : computed.items())
            if (!g.contains(label)) out.push_back({to_string(r.id) + " polynomial " + label, "absent", text.get<std::string>()});
    }
    return out;
}

void bless_golden(const CaseReport& r, const std::filesystem::path& golden) {
    const auto dir = golden / to_string(r.id);
    std::filesystem::create_directories(dir);
    for (const auto& t : report_tables(r)) write_file(dir / (t.name + ".csv"), to_csv(t));
    write_file(dir / "polynomials.json", polynomials_json(r));
}

std::vector<std::string> nearest_params(CaseId id, const std::string& text, std::size_t n) {
    std::vector<int> want;
    for (char c : text)
        if (c >= '0' && c <= '9') want.push_back(c - '0');
    std::vector<std::pair<int, std::string>> scored;
    for (const auto& p : enumerate_params(id)) {
        std::vector<int> have(p.k);
        have.insert(have.end(), p.h.begin(), p.h.end());
        have.push_back(p.l);
        if (p.m >= 0) have.push_back(p.m);
        int d = 10 * std::abs(static_cast<int>(have.size()) - static_cast<int>(want.size()));
        for (std::size_t i = 0; i < std::min(have.size(), want.size()); ++i) d += std::abs(have[i] - want[i]);
        scored.emplace_back(d, p.label());
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < std::min(n, scored.size()); ++i) out.push_back(scored[i].second);
    return out;
}

SubspaceParams require_params(CaseId id, const std::string& text) {
    try {
        return SubspaceParams::parse(id, text);
    } catch (const std::invalid_argument& ex) {
        std::string msg = std::string(ex.what()) + "; nearest valid:";
        for (const auto& s : nearest_params(id, text)) msg += " " + s;
        throw ConfigError(msg);
    }
}

std::string cells_csv(CaseId id, const std::vector<CellReport>& cells) {
    Table t{"cells", 1, {"cell", "dim", "class", "affine_dim"}, {}};
    if (!cells.empty())
        for (const auto& [q, n] : cells.front().counts) t.header.push_back("q=" + std::to_string(q));
    t.header.insert(t.header.end(), {"elimination", "elimination_dim"});
    for (const auto& c : cells) {
        std::vector<std::string> row{c.index.label(id), std::to_string(c.cell_dim), to_string(c.cls),
                                     c.affine_dim < 0 ? "-" : std::to_string(c.affine_dim)};
        for (const auto& [q, n] : c.counts) row.push_back(std::to_string(n));
        row.push_back(to_string(c.elimination.outcome));
        row.push_back(c.elimination.dim < 0 ? "-" : std::to_string(c.elimination.dim));
        t.rows.push_back(std::move(row));
    }
    return to_csv(t);
}

std::string cells_json(CaseId id, const SubspaceParams& p, const std::vector<CellReport>& cells) {
    ordered_json j;
    j["schema_version"] = 1;
    j["case"] = to_string(id);
    j["params"] = p.label();
    ordered_json a = ordered_json::array();
    for (const auto& c : cells) a.push_back(cell_json(id, c));
    j["cells"] = a;
    return j.dump(2) + "\n";
}

std::string blowup_json(const BlowupReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["params"] = r.params.label();
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"q", row.q},
                        {"x", row.x},
                        {"z", row.z},
                        {"l", row.l},
                        {"cell_a12_t132", row.cell_a12_t132},
                        {"cell_a21_t123", row.cell_a21_t123},
                        {"cell_a21_t132", row.cell_a21_t132},
                        {"cell_a21_s231_t123", row.cell_a21_s231_t123}});
    j["rows"] = rows;
    j["cells_match"] = r.cells_match;
    if (r.not_affine_witness)
        j["not_affine_witness"] = {{"q", r.not_affine_witness->first}, {"count", r.not_affine_witness->second}};
    else
        j["not_affine_witness"] = nullptr;
    return j.dump(2) + "\n";
}

}  // namespace paving
