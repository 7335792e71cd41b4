#include "stablecoh/ahss.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace stablecoh::ahss {

using abelian::Int;
using abelian::IntMatrix;
using json = nlohmann::json;

/****************************************************
 *              StemTable
 ***************************************************/

StemTable StemTable::defaults() {
    StemTable t;
    t.entries_[0] = {AbelianGroup::cyclic(0), "1", false};
    t.entries_[-1] = {AbelianGroup::cyclic(2), "eta", false};
    t.entries_[-2] = {AbelianGroup::cyclic(2), "eta^2", false};
    t.entries_[-3] = {AbelianGroup::cyclic(24), "nu", false};
    return t;
}

const StemEntry& StemTable::at(int q) const {
    static const StemEntry zero{AbelianGroup::trivial(), "0", false};
    if (q > 0)
        return zero;
    auto it = entries_.find(q);
    if (it == entries_.end())
        throw DomainError("StemTableIncomplete", fmt::format("no stem entry for q={}", q));
    return it->second;
}

int StemTable::q_min() const {
    return entries_.empty() ? 0 : entries_.begin()->first;
}

void StemTable::set(int q, StemEntry entry) {
    if (q > 0)
        throw std::invalid_argument("StemTable::set: q must be <= 0");
    entries_[q] = std::move(entry);
}

StemTable StemTable::load_config(std::istream& in, StemTable base) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw DomainError("ConfigParseError", fmt::format("stems config, line {}: {}", lineno, why));
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#')
            continue;
        size_t s1 = trimmed.find('|');
        size_t s2 = s1 == std::string::npos ? std::string::npos : trimmed.find('|', s1 + 1);
        if (s2 == std::string::npos)
            fail("expected `q|comma-separated-invariant-factors|label`");
        std::string qs = trimmed.substr(0, s1);
        std::string fs = trimmed.substr(s1 + 1, s2 - s1 - 1);
        std::string label = trimmed.substr(s2 + 1);
        int q = 0;
        try {
            size_t used = 0;
            q = std::stoi(qs, &used);
            if (used != qs.size())
                fail(fmt::format("bad stem index `{}`", qs));
        } catch (const std::exception&) {
            fail(fmt::format("bad stem index `{}`", qs));
        }
        if (q > 0)
            fail("stem index must be <= 0 (positive rows vanish)");
        std::vector<Int> factors;
        std::stringstream fss(fs);
        std::string tok;
        while (std::getline(fss, tok, ',')) {
            if (tok.empty())
                continue;
            try {
                size_t used = 0;
                factors.push_back(std::stoll(tok, &used));
                if (used != tok.size())
                    fail(fmt::format("bad invariant factor `{}`", tok));
            } catch (const DomainError&) {
                throw;
            } catch (const std::exception&) {
                fail(fmt::format("bad invariant factor `{}`", tok));
            }
            if (factors.back() < 0)
                fail("invariant factors must be nonnegative");
        }
        AbelianGroup g;
        try {
            g = abelian::group_from_cyclics(factors);
        } catch (const std::exception& e) {
            fail(e.what());
        }
        if (!rpcoh::is_valid_coefficient(g))
            fail(fmt::format("stem group {} is not cyclic; only cyclic coefficients are supported",
                             g.to_string()));
        base.set(q, StemEntry{g, label, true});
    }
    return base;
}

StemTable StemTable::load_config_file(const std::string& path, StemTable base) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("ConfigParseError", fmt::format("cannot open stems config `{}`", path));
    return load_config(in, std::move(base));
}

/****************************************************
 *              Pages
 ***************************************************/

const char* mode_name(Mode m) {
    return m == Mode::Anchored ? "anchored" : "full";
}

const char* caveat_name(Caveat c) {
    switch (c) {
    case Caveat::PossibleHigherDifferential:
        return "PossibleHigherDifferential";
    case Caveat::ExtensionAmbiguity:
        return "ExtensionAmbiguity";
    default:
        return "AssumedRuleUsed";
    }
}

const CellValue& Page::cell(int p, int q) const {
    auto it = cells.find({p, q});
    if (it == cells.end())
        throw std::out_of_range(fmt::format("Page::cell({},{}) outside window", p, q));
    return it->second;
}

AbelianGroup Page::group_or_zero(int p, int q) const {
    if (p < 0 || p > d - 1 || q > 0)
        return AbelianGroup::trivial();
    if (q < q_min)
        throw std::logic_error("Page::group_or_zero: below the stem window");
    return cell(p, q).group;
}

Page build_e2(int d, const StemTable& stems, Mode mode, int q_min) {
    if (d < 2)
        throw DomainError("InvalidDimension", fmt::format("d={}: need d >= 2", d));
    if (q_min > 0)
        throw std::invalid_argument("build_e2: q_min must be <= 0");
    Page page;
    page.d = d;
    page.page_index = 2;
    page.mode = mode;
    page.q_min = q_min;
    for (int q = q_min; q <= 0; ++q) {
        const StemEntry& stem = stems.at(q);  // throws StemTableIncomplete
        for (int p = 0; p <= d - 1; ++p) {
            CellValue v;
            v.kind = CellValue::Kind::Exact;
            v.group = rpcoh::cohomology_rp(d - 1, p, stem.group);
            v.provenance = {fmt::format("H^{}(RP^{}; {})", p, d - 1, stem.group.to_string())};
            page.cells[{p, q}] = std::move(v);
        }
    }
    return page;
}

/****************************************************
 *              d2 rules
 ***************************************************/

namespace {

struct Rule {
    enum class Kind { ZeroSource, ZeroTarget, TargetOutside, Sq2Row0, Sq2Eta, Unknown };
    Kind kind = Kind::Unknown;
    int p = 0, q = 0;
    int coeff = 0;
    std::optional<GroupHom> hom;  // absent iff Unknown
    std::string id;
    bool assumed() const { return kind == Kind::Sq2Eta; }
};

// generator multiple of order two in a cyclic group, if any
std::optional<Int> order_two_multiple(const AbelianGroup& g) {
    if (!g.is_cyclic() || g.is_trivial())
        return std::nullopt;
    Int f = g.factors()[0];
    if (f == 0 || f % 2 != 0)
        return std::nullopt;
    return f / 2;
}

GroupHom cyclic_hom(const AbelianGroup& src, const AbelianGroup& tgt, Int entry) {
    IntMatrix m(tgt.generator_count(), src.generator_count());
    if (m.rows == 1 && m.cols == 1)
        m.at(0, 0) = entry;
    return GroupHom::make(src, tgt, m);
}

// The differential d2: (p,q) -> (p+2, q-1) on the E2 page.
Rule make_rule(const Page& e2, int p, int q) {
    Rule r;
    r.p = p;
    r.q = q;
    AbelianGroup src = e2.group_or_zero(p, q);
    if (src.is_trivial()) {
        r.kind = Rule::Kind::ZeroSource;
        AbelianGroup tgt = q - 1 >= e2.q_min ? e2.group_or_zero(p + 2, q - 1)
                                             : AbelianGroup::trivial();
        r.hom = GroupHom::zero(src, tgt);
        r.id = fmt::format("d2 ({},{}): zero (source vanishes)", p, q);
        return r;
    }
    if (q - 1 < e2.q_min) {
        r.kind = Rule::Kind::Unknown;
        r.id = fmt::format("d2 ({},{}): unknown (target below stem window)", p, q);
        return r;
    }
    AbelianGroup tgt = e2.group_or_zero(p + 2, q - 1);
    if (tgt.is_trivial()) {
        r.kind = p + 2 > e2.d - 1 ? Rule::Kind::TargetOutside : Rule::Kind::ZeroTarget;
        r.hom = GroupHom::zero(src, tgt);
        r.id = fmt::format("d2 ({},{}): zero ({})", p, q,
                           r.kind == Rule::Kind::TargetOutside ? "target outside window"
                                                               : "target vanishes");
        return r;
    }
    if (q == 0) {
        // mod-2 reduction followed by Sq^2
        r.kind = Rule::Kind::Sq2Row0;
        r.coeff = rpcoh::sq(2, p, e2.d - 1).value;
        auto two = order_two_multiple(tgt);
        Int entry = (r.coeff == 1 && two) ? *two : 0;
        r.hom = cyclic_hom(src, tgt, entry);
        r.id = fmt::format("d2 ({},{})->({},{}): Sq2 coeff {}", p, q, p + 2, q - 1, r.coeff);
        return r;
    }
    if ((q == -1 || q == -2) && e2.mode == Mode::FullSq2) {
        // eta-multiplication detected by Sq2; lands in the 2-torsion of the target
        r.kind = Rule::Kind::Sq2Eta;
        r.coeff = rpcoh::sq(2, p, e2.d - 1).value;
        auto two = order_two_multiple(tgt);
        bool src_two_torsion = src.factors()[0] == 0 || src.factors()[0] % 2 == 0;
        Int entry = (r.coeff == 1 && two && src_two_torsion) ? *two : 0;
        r.hom = cyclic_hom(src, tgt, entry);
        r.id = fmt::format("d2 ({},{})->({},{}): eta-Sq2 coeff {} [assumed]", p, q, p + 2, q - 1,
                           r.coeff);
        return r;
    }
    r.kind = Rule::Kind::Unknown;
    r.id = fmt::format("d2 ({},{}): unknown ({})", p, q,
                       q >= -2 ? "anchored mode" : "no rule for this row");
    return r;
}

}  // namespace

D2Result d2_rule(int p, int q, int d, Mode mode, const StemTable& stems) {
    if (q > 0 || q < -2)
        throw DomainError("UnsupportedRow",
                          fmt::format("d2 source row q={} not in {{0,-1,-2}}", q));
    Page e2 = build_e2(d, stems, mode);
    if (p < 0 || p > d - 1 || p + 2 > d - 1 || q - 1 < e2.q_min)
        throw DomainError("OutOfWindow",
                          fmt::format("d2 ({},{})->({},{}) leaves the page window", p, q, p + 2,
                                      q - 1));
    Rule r = make_rule(e2, p, q);
    return D2Result{r.hom, r.id, r.assumed()};
}

Page apply_d2(const Page& e2) {
    if (e2.page_index != 2)
        throw std::invalid_argument("apply_d2: page_index must be 2");
    Page e3;
    e3.d = e2.d;
    e3.page_index = 3;
    e3.mode = e2.mode;
    e3.q_min = e2.q_min;
    for (const auto& [key, e2cell] : e2.cells) {
        auto [p, q] = key;
        Rule in = make_rule(e2, p - 2, q + 1);
        Rule out = make_rule(e2, p, q);
        CellValue v;
        v.provenance.push_back(fmt::format("E2({},{}) = {}", p, q, e2cell.group.to_string()));
        v.provenance.push_back("in: " + in.id);
        v.provenance.push_back("out: " + out.id);
        v.assumed = (in.hom && in.assumed()) || (out.hom && out.assumed());
        if (in.hom && out.hom) {
            v.kind = CellValue::Kind::Exact;
            v.group = abelian::kernel_mod_image(*in.hom, *out.hom);
        } else if (in.hom && abelian::cokernel_group(*in.hom).is_trivial()) {
            // surjective incoming: d2 o d2 = 0 forces the whole cell to die,
            // whatever the unknown outgoing differential is
            v.kind = CellValue::Kind::Exact;
            v.group = AbelianGroup::trivial();
            v.assumed = in.assumed();
        } else {
            v.kind = CellValue::Kind::SubquotientOf;
            v.group = e2cell.group;
            v.assumed = in.hom && in.assumed();
        }
        e3.cells[key] = std::move(v);
    }
    return e3;
}

/****************************************************
 *              Hurewicz analysis
 ***************************************************/

namespace {

std::vector<AbelianGroup> sorted_unique(std::vector<AbelianGroup> gs) {
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    return gs;
}

// all subquotient isomorphism classes of a finite cyclic group
std::vector<AbelianGroup> subquotients_of(const AbelianGroup& g) {
    if (!g.is_cyclic() || !g.is_finite())
        throw std::logic_error("subquotients_of: finite cyclic ambient expected");
    Int n = g.is_trivial() ? 1 : g.factors()[0];
    std::vector<AbelianGroup> out;
    for (Int t = 1; t <= n; ++t)
        if (n % t == 0)
            out.push_back(AbelianGroup::cyclic(t));
    return out;
}

// abelian extensions 0 -> subgroup -> X -> quotient -> 0, both cyclic finite
std::vector<AbelianGroup> extension_classes(const AbelianGroup& quotient,
                                            const AbelianGroup& subgroup) {
    if (!quotient.is_cyclic() || !subgroup.is_cyclic() || !quotient.is_finite() ||
        !subgroup.is_finite())
        throw std::logic_error("extension_classes: finite cyclic inputs expected");
    Int a = quotient.is_trivial() ? 1 : quotient.factors()[0];
    Int b = subgroup.is_trivial() ? 1 : subgroup.factors()[0];
    std::vector<AbelianGroup> out;
    Int g = std::gcd(a, b);
    for (Int t = 1; t <= g; ++t)
        if (g % t == 0)
            out.push_back(abelian::group_from_cyclics({t, (a * b) / t}));
    return sorted_unique(std::move(out));
}

}  // namespace

HurewiczAnalysis hurewicz_analysis(int d, int k, Mode mode, const StemTable& stems) {
    if (k < 0 || d - 1 - k < 0)
        throw DomainError("InvalidDimension",
                          fmt::format("hurewicz_analysis(d={}, k={}): need 0 <= k <= d-1", d, k));
    if (k > 2)
        throw DomainError("UnsupportedK",
                          fmt::format("k={}: the stem table window ends at q=-3", k));
    Page e2 = build_e2(d, stems, mode);
    Page e3 = apply_d2(e2);
    const int n = d - 1 - k;

    HurewiczAnalysis res;
    res.d = d;
    res.k = k;
    res.mode = mode;

    // cokernel: the edge cell (n, 0) survives to E_infinity as ker(d2), so the
    // cokernel of the Hurewicz map is the image of the outgoing d2
    Rule edge_out = make_rule(e2, n, 0);
    res.cokernel_bound = {abelian::image_group(*edge_out.hom)};
    res.provenance.push_back(fmt::format("edge E({},0) of E2 = {}", n, 0,
                                         e2.cell(n, 0).group.to_string()));
    res.provenance.push_back("edge out: " + edge_out.id);

    // kernel: filtration cells E(n+j, -j), j = 1..k; deeper filtration sits
    // as the subgroup of the extension
    std::vector<std::vector<AbelianGroup>> layer_sets;
    for (int j = 1; j <= k; ++j) {
        int p = n + j, q = -j;
        const CellValue& cell = e3.cell(p, q);
        for (const auto& line : cell.provenance)
            res.provenance.push_back(fmt::format("filtration E3({},{}) {}", p, q, line));
        std::vector<AbelianGroup> poss;
        if (cell.kind == CellValue::Kind::Exact)
            poss = {cell.group};
        else
            poss = subquotients_of(cell.group);
        if (cell.assumed)
            res.caveats.insert(Caveat::AssumedRuleUsed);

        // a d3-shaped arrow (p-3, q+2) -> (p, q) between two cells not known
        // to vanish downgrades the cell to a quotient bound
        int sp = p - 3, sq = q + 2;
        if (sq <= 0 && sp >= 0) {
            const CellValue& src = e3.cell(sp, sq);
            bool src_maybe_nonzero =
                !(src.kind == CellValue::Kind::Exact && src.group.is_trivial());
            bool cell_maybe_nonzero = std::any_of(poss.begin(), poss.end(),
                                                  [](const AbelianGroup& g) { return !g.is_trivial(); });
            if (src_maybe_nonzero && cell_maybe_nonzero) {
                res.caveats.insert(Caveat::PossibleHigherDifferential);
                res.provenance.push_back(
                    fmt::format("possible d3 ({},{}) -> ({},{})", sp, sq, p, q));
                std::vector<AbelianGroup> widened;
                for (const auto& g : poss) {
                    auto qs = subquotients_of(g);  // quotients of a cyclic group
                    widened.insert(widened.end(), qs.begin(), qs.end());
                }
                poss = std::move(widened);
            }
        }
        layer_sets.push_back(sorted_unique(std::move(poss)));
    }

    std::vector<AbelianGroup> acc = {AbelianGroup::trivial()};
    for (int j = k; j >= 1; --j) {
        std::vector<AbelianGroup> next;
        for (const auto& quotient : layer_sets[size_t(j - 1)])
            for (const auto& sub : acc) {
                if (!quotient.is_trivial() && !sub.is_trivial())
                    res.caveats.insert(Caveat::ExtensionAmbiguity);
                auto exts = extension_classes(quotient, sub);
                next.insert(next.end(), exts.begin(), exts.end());
            }
        acc = sorted_unique(std::move(next));
    }
    res.kernel_bound = std::move(acc);

    res.exact = res.kernel_bound.size() == 1 && res.cokernel_bound.size() == 1 &&
                res.caveats.empty();
    return res;
}

NonequivariantDescriptor equivariant_to_nonequivariant(int i, int d, Mode mode,
                                                       const StemTable& stems) {
    if (i <= 1)
        throw DomainError("IndexTooSmall",
                          fmt::format("i={}: the identification needs i > 1", i));
    NonequivariantDescriptor out;
    out.i = i;
    out.d = d;
    out.k = d - i;
    out.equivariant_text = fmt::format("π^{}_{{Z₂,H}}(*; R̃^{})", i, d);
    out.nonequivariant_text = fmt::format("π^{}(RP^{})", i - 1, d - 1);
    if (out.k < 0) {
        // degree above the dimension of RP^{d-1}: the group vanishes
        out.group = AbelianGroup::trivial();
        return out;
    }
    if (out.k <= 2) {
        out.hurewicz = hurewicz_analysis(d, out.k, mode, stems);
        if (out.k == 0)
            out.group = rpcoh::cohomology_rp(d - 1, d - 1, AbelianGroup::cyclic(0));
    }
    return out;
}

/****************************************************
 *              Rendering
 ***************************************************/

std::string group_set_to_string(const std::vector<AbelianGroup>& groups) {
    if (groups.size() == 1)
        return groups[0].to_string();
    std::string s = "{";
    for (size_t i = 0; i < groups.size(); ++i)
        s += (i ? ", " : "") + groups[i].to_string();
    return s + "}";
}

namespace {

std::string cell_text(const CellValue& v) {
    if (v.kind == CellValue::Kind::Exact)
        return v.group.to_string();
    if (v.group == AbelianGroup::cyclic(2))
        return "*";  // the diagrams' notation: 0 or Z2
    return "*(" + v.group.to_string() + ")";
}

json group_to_json(const AbelianGroup& g) {
    return json(g.factors());
}

AbelianGroup group_from_json(const json& j) {
    return abelian::AbelianGroup(j.get<std::vector<Int>>());
}

}  // namespace

std::string render_page(const Page& page, RenderFormat format) {
    if (format == RenderFormat::Structured)
        return page_to_json_text(page);
    if (page.cells.empty())
        return "";
    std::vector<std::string> labels;
    size_t width = 2;
    for (int q = 0; q >= page.q_min; --q)
        for (int p = 0; p <= page.d - 1; ++p)
            width = std::max(width, cell_text(page.cell(p, q)).size());
    std::string out = fmt::format("E{} page, d = {} (base RP^{}), mode = {}\n", page.page_index,
                                  page.d, page.d - 1, mode_name(page.mode));
    std::string header = fmt::format("{:>5} |", "q\\p");
    for (int p = 0; p <= page.d - 1; ++p)
        header += fmt::format(" {:>{}}", p, width);
    out += header + "\n";
    out += std::string(header.size() + 1, '-') + "\n";
    for (int q = 0; q >= page.q_min; --q) {
        std::string row = fmt::format("{:>5} |", q);
        for (int p = 0; p <= page.d - 1; ++p)
            row += fmt::format(" {:>{}}", cell_text(page.cell(p, q)), width);
        out += row + "\n";
    }
    return out;
}

std::string page_to_json_text(const Page& page) {
    json cells = json::array();
    for (const auto& [key, v] : page.cells) {
        json c;
        c["p"] = key.first;
        c["q"] = key.second;
        c["kind"] = v.kind == CellValue::Kind::Exact ? "exact" : "subquotient";
        c["group"] = group_to_json(v.group);
        c["group_text"] = v.kind == CellValue::Kind::Exact ? v.group.to_string() : cell_text(v);
        c["provenance"] = v.provenance;
        c["assumed"] = v.assumed;
        cells.push_back(c);
    }
    json j;
    j["d"] = page.d;
    j["page"] = page.page_index;
    j["mode"] = mode_name(page.mode);
    j["q_min"] = page.q_min;
    j["cells"] = cells;
    return j.dump(2);
}

Page page_from_json_text(const std::string& text) {
    json j = json::parse(text);
    Page page;
    page.d = j.at("d").get<int>();
    page.page_index = j.at("page").get<int>();
    page.mode = j.at("mode").get<std::string>() == "anchored" ? Mode::Anchored : Mode::FullSq2;
    page.q_min = j.at("q_min").get<int>();
    for (const auto& c : j.at("cells")) {
        CellValue v;
        v.kind = c.at("kind").get<std::string>() == "exact" ? CellValue::Kind::Exact
                                                            : CellValue::Kind::SubquotientOf;
        v.group = group_from_json(c.at("group"));
        v.provenance = c.at("provenance").get<std::vector<std::string>>();
        v.assumed = c.at("assumed").get<bool>();
        page.cells[{c.at("p").get<int>(), c.at("q").get<int>()}] = std::move(v);
    }
    return page;
}

}  // namespace stablecoh::ahss
