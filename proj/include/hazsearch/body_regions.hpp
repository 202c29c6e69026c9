#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hazsearch {

/// Human body regions carried by the collision shapes of the virtual human.
enum class BodyRegion { HeadFace, Chest, UpperArm, Forearm, Hand, LowerLegs };

inline const char* to_string(BodyRegion r) {
    switch (r) {
        case BodyRegion::HeadFace: return "head_face";
        case BodyRegion::Chest: return "chest";
        case BodyRegion::UpperArm: return "upper_arm";
        case BodyRegion::Forearm: return "forearm";
        case BodyRegion::Hand: return "hand";
        case BodyRegion::LowerLegs: return "lower_legs";
    }
    return "?";
}

inline constexpr BodyRegion kAllRegions[] = {BodyRegion::HeadFace, BodyRegion::Chest,
                                             BodyRegion::UpperArm, BodyRegion::Forearm,
                                             BodyRegion::Hand,     BodyRegion::LowerLegs};

struct UnknownRegion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-region contact parameters: effective mass, spring constant, and the
/// maximum permissible collision force for that region.
struct BodyRegionParams {
    BodyRegion region = BodyRegion::Chest;
    double effective_mass_kg = 0.0;
    double spring_constant_n_per_m = 0.0;
    double max_force_n = 0.0;
};

class BodyRegionTable {
public:
    BodyRegionTable() = default;

    void insert(const BodyRegionParams& p) { rows_[p.region] = p; }

    bool contains(BodyRegion r) const { return rows_.count(r) > 0; }

    const BodyRegionParams& at(BodyRegion r) const {
        auto it = rows_.find(r);
        if (it == rows_.end())
            throw UnknownRegion(std::string("no body-region parameters for '") + to_string(r) + "'");
        return it->second;
    }

    std::size_t size() const { return rows_.size(); }

    bool operator==(const BodyRegionTable& o) const {
        if (rows_.size() != o.rows_.size()) return false;
        for (const auto& [r, p] : rows_) {
            if (!o.contains(r)) return false;
            const auto& q = o.at(r);
            if (p.effective_mass_kg != q.effective_mass_kg ||
                p.spring_constant_n_per_m != q.spring_constant_n_per_m ||
                p.max_force_n != q.max_force_n)
                return false;
        }
        return true;
    }

private:
    std::map<BodyRegion, BodyRegionParams> rows_;
};

/// Built-in defaults in the style of the ISO/TS 15066 Annex A body model
/// (region key, effective mass kg, spring constant N/mm, max force N).
/// Verify against the current edition of the standard before relying on the
/// numbers for a real workplace assessment; see data/body_regions.txt.
inline BodyRegionTable default_body_regions() {
    BodyRegionTable t;
    t.insert({BodyRegion::HeadFace, 4.4, 75.0e3, 65.0});
    t.insert({BodyRegion::Chest, 40.0, 25.0e3, 140.0});
    t.insert({BodyRegion::UpperArm, 3.0, 30.0e3, 150.0});
    t.insert({BodyRegion::Forearm, 2.0, 40.0e3, 160.0});
    t.insert({BodyRegion::Hand, 0.6, 75.0e3, 140.0});
    t.insert({BodyRegion::LowerLegs, 20.0, 60.0e3, 130.0});
    return t;
}

struct RegionTableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool parse_region_name(const std::string& s, BodyRegion& out) {
    for (BodyRegion r : kAllRegions) {
        if (s == to_string(r)) {
            out = r;
            return true;
        }
    }
    return false;
}

/// Load a body-region table. One record per line:
///   <region> <m_H kg> <k N/mm> <F_max N>
/// '#' starts a comment; spring constants are converted to N/m on load.
inline BodyRegionTable load_body_regions(std::istream& in, const std::string& source = "<stream>") {
    BodyRegionTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        BodyRegion region;
        if (!parse_region_name(name, region))
            throw RegionTableError(source + ":" + std::to_string(lineno) + ": unknown region '" + name + "'");
        double m, k_n_per_mm, fmax;
        if (!(ls >> m >> k_n_per_mm >> fmax))
            throw RegionTableError(source + ":" + std::to_string(lineno) + ": expected <m_H> <k N/mm> <F_max>");
        if (!(m > 0.0 && k_n_per_mm > 0.0 && fmax > 0.0))
            throw RegionTableError(source + ":" + std::to_string(lineno) + ": values must be > 0");
        t.insert({region, m, k_n_per_mm * 1000.0, fmax});
    }
    return t;
}

inline BodyRegionTable load_body_regions_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RegionTableError("cannot open body-region table: " + path);
    return load_body_regions(in, path);
}

}  // namespace hazsearch
