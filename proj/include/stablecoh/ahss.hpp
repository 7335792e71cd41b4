#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "stablecoh/abelian.hpp"
#include "stablecoh/rpcohomology.hpp"

namespace stablecoh::ahss {

using abelian::AbelianGroup;
using abelian::GroupHom;

/****************************************************
 *              Stem table
 ***************************************************/

struct StemEntry {
    AbelianGroup group;
    std::string label;
    bool user_supplied = false;
};

/* Coefficient row data pi^q_st(pt) for q <= 0; rows q > 0 are implicitly zero
 * (connectivity of the sphere spectrum). */
class StemTable {
public:
    // q=0: Z (1), q=-1: Z2 (eta), q=-2: Z2 (eta^2), q=-3: Z24 (nu)
    static StemTable defaults();
    /* One entry per line, `q|comma-separated-invariant-factors|label`,
     * e.g. `-3|24|nu`; blank lines and lines starting with # are skipped.
     * Entries override or extend `base`; parse errors carry line numbers. */
    static StemTable load_config(std::istream& in, StemTable base = defaults());
    static StemTable load_config_file(const std::string& path, StemTable base = defaults());

    bool contains(int q) const { return q > 0 || entries_.count(q) > 0; }
    const StemEntry& at(int q) const;  // q <= 0 and present, else StemTableIncomplete
    int q_min() const;
    void set(int q, StemEntry entry);
    const std::map<int, StemEntry>& entries() const { return entries_; }

    // documentation metadata only; no computation consumes it
    static const char* relation_note() { return "eta^3 = 12 nu"; }

private:
    std::map<int, StemEntry> entries_;
};

/****************************************************
 *              Pages and cells
 ***************************************************/

enum class Mode { Anchored, FullSq2 };
const char* mode_name(Mode m);

struct CellValue {
    enum class Kind { Exact, SubquotientOf };
    Kind kind = Kind::Exact;
    AbelianGroup group;  // the value (Exact) or the ambient bound (SubquotientOf)
    std::vector<std::string> provenance;
    bool assumed = false;  // an assumed (eta-row) rule entered this value

    friend bool operator==(const CellValue&, const CellValue&) = default;
};

struct Page {
    int d = 0;  // base space RP^{d-1}
    int page_index = 2;
    Mode mode = Mode::FullSq2;
    int q_min = -3;
    std::map<std::pair<int, int>, CellValue> cells;  // (p,q), 0<=p<=d-1, q_min<=q<=0

    bool in_window(int p, int q) const { return p >= 0 && p <= d - 1 && q <= 0 && q >= q_min; }
    const CellValue& cell(int p, int q) const;  // in-window only
    /* Trivial outside the p-range or for q > 0; throws below the stem window. */
    AbelianGroup group_or_zero(int p, int q) const;

    friend bool operator==(const Page&, const Page&) = default;
};

Page build_e2(int d, const StemTable& stems = StemTable::defaults(), Mode mode = Mode::FullSq2,
              int q_min = -3);

/* Outcome of asking for the differential d2: (p,q) -> (p+2,q-1). An absent
 * hom is the Unknown marker (anchored mode below row 0, or a target below
 * the stem window). */
struct D2Result {
    std::optional<GroupHom> hom;
    std::string rule_id;
    bool assumed = false;
};

/* Public form; requires q in {0,-1,-2} (UnsupportedRow) and both endpoints
 * inside the page window (OutOfWindow). */
D2Result d2_rule(int p, int q, int d, Mode mode, const StemTable& stems = StemTable::defaults());

Page apply_d2(const Page& e2);

/****************************************************
 *              Hurewicz read-off
 ***************************************************/

enum class Caveat { PossibleHigherDifferential, ExtensionAmbiguity, AssumedRuleUsed };
const char* caveat_name(Caveat c);

/* Kernel/cokernel bounds for the Hurewicz map
 * pi^{d-1-k}(RP^{d-1}) -> H^{d-1-k}(RP^{d-1}; Z). */
struct HurewiczAnalysis {
    int d = 0;
    int k = 0;
    Mode mode = Mode::FullSq2;
    std::vector<AbelianGroup> kernel_bound;    // sorted, deduplicated, nonempty
    std::vector<AbelianGroup> cokernel_bound;  // sorted, deduplicated, nonempty
    bool exact = false;
    std::set<Caveat> caveats;
    std::vector<std::string> provenance;
};

HurewiczAnalysis hurewicz_analysis(int d, int k, Mode mode = Mode::FullSq2,
                                   const StemTable& stems = StemTable::defaults());

/* pi^i_{Z2,H}(*; R~^d) = pi^{i-1}(RP^{d-1}) for i > 1 (IndexTooSmall below). */
struct NonequivariantDescriptor {
    int i = 0;
    int d = 0;
    int k = 0;  // d - i
    std::string equivariant_text;
    std::string nonequivariant_text;
    std::optional<AbelianGroup> group;  // exact value when known (k = 0, or k < 0)
    std::optional<HurewiczAnalysis> hurewicz;
};

NonequivariantDescriptor equivariant_to_nonequivariant(int i, int d, Mode mode = Mode::FullSq2,
                                                       const StemTable& stems = StemTable::defaults());

/****************************************************
 *              Rendering
 ***************************************************/

enum class RenderFormat { Table, Structured };

/* Table format mirrors the published diagram layout: rows q descending,
 * columns p ascending, "*" for a subquotient-of-Z2 cell. Structured format
 * is JSON and round-trips through page_from_json. */
std::string render_page(const Page& page, RenderFormat format);
std::string page_to_json_text(const Page& page);
Page page_from_json_text(const std::string& text);

std::string group_set_to_string(const std::vector<AbelianGroup>& groups);

}  // namespace stablecoh::ahss
