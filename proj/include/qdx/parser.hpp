#pragma once

#include "qdx/assemble.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdx {

// Parsed, name-bound contents of a fixture file (.qdx).  Declarations are
// kept in file order; forward references and duplicate names are rejected.
struct Environment {
    struct RingDecl {
        std::string name;
        WeightedRing ring;
    };
    struct IdealDecl {
        std::string name;
        std::string ring_name;
        MonIdeal ideal;
    };
    struct ModuleDecl {
        std::string name;
        std::string ring_name;
        std::vector<std::pair<int, std::string>> parts; // (shift, ideal name)
        GradedModule module;
    };
    struct MapDecl {
        std::string name;
        std::string source_ring, target_ring;
        MonRingMap map;
    };
    struct GroupDecl {
        std::string name;
        PermGroup group;
    };
    struct GSetTerm {
        enum Kind { Pt, Cosets, Free, Table } kind = Pt;
        std::vector<Perm> subgroup_gens; // cosets
        int copies = 1;                  // free
        int points = 0;                  // table
        std::vector<std::vector<int>> action; // table
    };
    struct GSetDecl {
        std::string name;
        std::string group_name;
        std::vector<GSetTerm> terms;
        GSet gset;
    };
    struct ModelDecl {
        std::string name;
        CohModel model;
    };
    struct FixtureDecl {
        std::string name;
        std::string group_name, gset_name;
        std::optional<std::string> global_model_name;
        struct StabEntry {
            std::vector<Perm> gens;
            std::string model_name;
        };
        std::vector<StabEntry> stab_entries;
        struct CentEntry {
            std::optional<std::pair<std::vector<Perm>, int>> pair_key;
            std::optional<int> rank_key;
            std::string model_name;
        };
        std::vector<CentEntry> cent_entries;
        struct MatchDecl {
            std::vector<std::string> prime_vars; // empty = zero prime
            std::vector<Perm> pair_gens;
            int point = 0;
            std::optional<std::string> res_name;
        };
        struct AlgDecl {
            std::string ring_name;
            std::string module_name;
            std::vector<MatchDecl> matches;
        };
        std::optional<AlgDecl> alg;
        std::optional<Rat> expected_lhs, expected_rhs;
        std::string note;
        Fixture fixture; // resolved
    };

    std::vector<RingDecl> rings;
    std::vector<IdealDecl> ideals;
    std::vector<ModuleDecl> modules;
    std::vector<MapDecl> maps;
    std::vector<GroupDecl> groups;
    std::vector<GSetDecl> gsets;
    std::vector<ModelDecl> models;
    std::vector<FixtureDecl> fixtures;
    std::vector<std::pair<std::string, std::string>> order; // (kind, name) in file order

    const RingDecl* find_ring(const std::string& name) const;
    const IdealDecl* find_ideal(const std::string& name) const;
    const ModuleDecl* find_module(const std::string& name) const;
    const MapDecl* find_map(const std::string& name) const;
    const GroupDecl* find_group(const std::string& name) const;
    const GSetDecl* find_gset(const std::string& name) const;
    const ModelDecl* find_model(const std::string& name) const;
    const FixtureDecl* find_fixture(const std::string& name) const;
    bool name_taken(const std::string& name) const;

    // Module named directly, or an ideal name wrapped as a cyclic module.
    std::pair<const WeightedRing*, GradedModule> module_or_ideal(const std::string& name) const;
};

Environment parse_environment(const std::string& text,
                              std::size_t group_bound = kDefaultGroupBound);

// Canonical text form; parse(pretty_print(env)) reproduces the environment.
std::string pretty_print(const Environment& env);

} // namespace qdx
