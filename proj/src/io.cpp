#include "iwa/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace iwa {

namespace {

long get_long(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw domain_error(std::string("missing or non-integer field \"") + key + "\"");
    return j.at(key).get<long>();
}

long get_long_or(const json& j, const char* key, long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw domain_error(std::string("non-integer field \"") + key + "\"");
    return j.at(key).get<long>();
}

}  // namespace

json series_to_json(const TruncatedSeries& f) {
    json j;
    j["p"] = f.prime();
    j["x_trunc"] = f.x_trunc();
    j["prec"] = f.prec();
    json coeffs = json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(c.str());
    j["coeffs"] = std::move(coeffs);
    switch (f.tail()) {
        case TailKind::Zero: j["tail"] = "zero"; break;
        case TailKind::LogBounded: j["tail"] = "log_bounded"; break;
        case TailKind::Unknown: j["tail"] = "unknown"; break;
    }
    j["tail_offset"] = f.tail_offset();
    return j;
}

TruncatedSeries series_from_json(const json& j) {
    long p = get_long(j, "p");
    long prec = get_long(j, "prec");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array())
        throw domain_error("series file needs a \"coeffs\" array");
    std::vector<PadicScalar> c;
    for (const auto& lit : j.at("coeffs")) {
        if (!lit.is_string()) throw domain_error("series coefficients are scalar literals");
        c.push_back(PadicScalar::parse(p, lit.get<std::string>(), prec));
    }
    long xt = get_long_or(j, "x_trunc", (long)c.size());
    if (xt != (long)c.size())
        throw domain_error("series file: x_trunc disagrees with the coefficient count");
    TailKind tail = TailKind::Zero;
    std::string ts = j.value("tail", "zero");
    if (ts == "log_bounded")
        tail = TailKind::LogBounded;
    else if (ts == "unknown")
        tail = TailKind::Unknown;
    else if (ts != "zero")
        throw domain_error("series file: unknown tail kind \"" + ts + "\"");
    return TruncatedSeries(p, prec, std::move(c), tail, get_long_or(j, "tail_offset", 0));
}

json group_to_json(const GroupRingElem& g) {
    json j;
    j["p"] = g.prime();
    j["level"] = g.level();
    json coeffs = json::object();
    for (const auto& [a, v] : g.coeffs()) coeffs[std::to_string(a)] = v.str();
    j["coeffs"] = std::move(coeffs);
    return j;
}

GroupRingElem group_from_json(const json& j, long default_p, long default_prec) {
    long p = get_long_or(j, "p", default_p);
    long level = get_long(j, "level");
    GroupRingElem g(p, level);
    if (!j.contains("coeffs") || !j.at("coeffs").is_object())
        throw domain_error("group-ring file needs a \"coeffs\" object");
    for (const auto& [key, lit] : j.at("coeffs").items()) {
        if (!lit.is_string()) throw domain_error("group-ring coefficients are scalar literals");
        g.set(std::stol(key), PadicScalar::parse(p, lit.get<std::string>(), default_prec));
    }
    return g;
}

MatrixFile matrix_from_json(const json& j) {
    MatrixFile m;
    std::string mode = j.value("mode", "factored");
    if (!j.contains("entries") || !j.at("entries").is_array() || j.at("entries").empty())
        throw domain_error("matrix file needs a non-empty \"entries\" array of rows");
    if (mode == "factored") {
        m.mode = MatrixFile::Mode::Factored;
        for (const auto& row : j.at("entries")) {
            std::vector<FactoredElement> r;
            for (const auto& cell : row) {
                if (cell.is_null()) {
                    r.push_back(FactoredElement::zero());
                } else if (cell.is_object()) {
                    FactoredElement e;
                    for (const auto& [sym, exp] : cell.items())
                        e = e * FactoredElement::sym(FactorSym::parse(sym), exp.get<long>());
                    r.push_back(e);
                } else {
                    throw domain_error("factored entries are objects of symbol exponents, or null");
                }
            }
            m.factored.push_back(std::move(r));
        }
        for (const auto& r : m.factored)
            if (r.size() != m.factored[0].size())
                throw domain_error("matrix rows have unequal lengths");
    } else if (mode == "numeric") {
        m.mode = MatrixFile::Mode::Numeric;
        for (const auto& row : j.at("entries")) {
            std::vector<TruncatedSeries> r;
            for (const auto& cell : row) r.push_back(series_from_json(cell));
            m.numeric.push_back(std::move(r));
        }
        for (const auto& r : m.numeric)
            if (r.size() != m.numeric[0].size())
                throw domain_error("matrix rows have unequal lengths");
    } else {
        throw domain_error("matrix mode must be \"factored\" or \"numeric\"");
    }
    return m;
}

json matrix_to_json(const FactoredMatrix& a) {
    json j;
    j["mode"] = "factored";
    json rows = json::array();
    for (const auto& row : a) {
        json r = json::array();
        for (const auto& e : row) {
            if (e.is_zero()) {
                r.push_back(nullptr);
                continue;
            }
            json cell = json::object();
            for (const auto& [s, x] : e.exponents()) cell[s.str()] = x;
            r.push_back(std::move(cell));
        }
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j;
}

namespace {

ExtMatrix ext_matrix_from_json(const json& j, ExtModulusPtr mod, long p, long prec,
                               const char* name) {
    if (!j.is_array() || j.empty()) throw domain_error(std::string(name) + " must be a matrix");
    ExtMatrix m;
    for (const auto& row : j) {
        std::vector<ExtScalar> r;
        for (const auto& cell : row) {
            if (cell.is_string()) {
                r.push_back(ExtScalar::from_base(
                    mod, PadicScalar::parse(p, cell.get<std::string>(), prec)));
            } else if (cell.is_number_integer()) {
                r.push_back(ExtScalar::from_base(
                    mod, PadicScalar::from_long(p, cell.get<long>(), prec)));
            } else if (cell.is_array()) {
                std::vector<PadicScalar> co;
                for (const auto& lit : cell)
                    co.push_back(lit.is_string()
                                     ? PadicScalar::parse(p, lit.get<std::string>(), prec)
                                     : PadicScalar::from_long(p, lit.get<long>(), prec));
                while ((long)co.size() < mod->degree()) co.push_back(PadicScalar::zero_at(p, prec));
                r.push_back(ExtScalar(mod, std::move(co)));
            } else {
                throw domain_error(std::string(name) +
                                   " entries are scalar literals, integers, or coefficient arrays");
            }
        }
        m.push_back(std::move(r));
    }
    for (const auto& r : m)
        if (r.size() != m.size())
            throw domain_error(std::string(name) + " must be square over the weight count");
    return m;
}

}  // namespace

FilteredPhiNModule module_from_json(const json& j, long default_prec) {
    FilteredPhiNModule d;
    d.p = get_long(j, "p");
    d.u = get_long_or(j, "u", d.p + 1);
    d.K_degree = get_long_or(j, "K_degree", 1);
    if (!j.contains("weights") || !j.at("weights").is_array() || j.at("weights").empty())
        throw domain_error("module file needs a non-empty \"weights\" array");
    for (const auto& w : j.at("weights")) d.weights.push_back(w.get<long>());
    d.dim = (long)d.weights.size();
    if (j.contains("flags")) {
        const auto& f = j.at("flags");
        d.flags.no_pj_eigenvalue = f.value("no_pj_eigenvalue", false);
        d.flags.V_fixed_trivial = f.value("V_fixed_trivial", false);
    }
    auto mod = ExtModulus::inert_default(d.p, d.K_degree);
    if (j.contains("phi"))
        d.phi_matrix = ext_matrix_from_json(j.at("phi"), mod, d.p, default_prec, "phi");
    if (j.contains("N"))
        d.N_matrix = ext_matrix_from_json(j.at("N"), mod, d.p, default_prec, "N");
    if (!d.phi_matrix.empty() && (long)d.phi_matrix.size() != d.dim)
        throw domain_error("phi matrix size must equal the number of weights");
    if (!d.N_matrix.empty() && (long)d.N_matrix.size() != d.dim)
        throw domain_error("N matrix size must equal the number of weights");
    return d;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error(path + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw domain_error(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw domain_error(path + ": cannot open for writing");
    out << content;
}

std::string tsv_table(const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << '\t';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string chain_tsv(const DivisorChain& chain) {
    std::set<FactorSym> syms;
    for (const auto& e : chain.entries)
        if (!e.is_zero())
            for (const auto& [s, x] : e.exponents()) syms.insert(s);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"divisor"};
    for (const auto& s : syms) header.push_back(s.str());
    rows.push_back(header);
    for (size_t i = 0; i < chain.entries.size(); ++i) {
        std::vector<std::string> row{std::to_string(i + 1)};
        for (const auto& s : syms)
            row.push_back(chain.entries[i].is_zero()
                              ? "inf"
                              : std::to_string(chain.entries[i].exponent(s)));
        rows.push_back(std::move(row));
    }
    return tsv_table(rows);
}

std::string factored_tsv(const FactoredElement& f, const std::string& label) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{label}, row{"1"};
    if (f.is_zero()) {
        header.push_back("zero");
        row.push_back("inf");
    } else {
        for (const auto& [s, x] : f.exponents()) {
            header.push_back(s.str());
            row.push_back(std::to_string(x));
        }
    }
    rows.push_back(std::move(header));
    rows.push_back(std::move(row));
    return tsv_table(rows);
}

}  // namespace iwa
