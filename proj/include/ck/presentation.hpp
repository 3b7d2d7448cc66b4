#pragma once

#include "ck/word.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ck {

/// Finite presentation <generators | relators> with optional marked
/// boundary words ("meridian", "longitude").
struct GroupPresentation {
    std::string name;
    std::vector<std::string> generators;
    std::vector<Word> relators;
    std::map<std::string, Word> marked;

    int rank() const { return static_cast<int>(generators.size()); }
    std::optional<int> index_of(std::string_view gen) const;
    /// Throws DomainError if some relator or marked word uses an undeclared generator.
    void validate() const;
    std::string word_str(const Word& w) const { return w.str(generators); }
    const Word& meridian() const;
    const Word& longitude() const;
    bool has_marked(const std::string& role) const { return marked.count(role) != 0; }
};

struct PtfaCertificate;

/// Epimorphism gamma: source -> target given by generator images.
struct EpiOverG {
    GroupPresentation source;
    GroupPresentation target;
    std::vector<Word> images;
    std::shared_ptr<const PtfaCertificate> ptfa;

    Word apply(const Word& w) const { return w.substitute(images); }
};

/// Homomorphism f: A -> B compatible with gamma_A and gamma_B.
struct MorphismOverG {
    std::vector<Word> images;
    EpiOverG gamma_a;
    EpiOverG gamma_b;

    const GroupPresentation& source() const { return gamma_a.source; }
    const GroupPresentation& target() const { return gamma_b.source; }
    Word apply(const Word& w) const { return w.substitute(images); }
};

/// Generator images of a named map as written in a file.
struct MapSpec {
    std::string name;
    std::string source;
    std::string target;
    std::vector<Word> images;
};

/// Everything declared in one presentation file.
struct PresentationDocument {
    std::vector<GroupPresentation> groups;
    /// Keyed by source group name.
    std::map<std::string, MapSpec> epis;
    std::map<std::string, MapSpec> maps;

    const GroupPresentation& group(const std::string& name) const;
    /// Builds the EpiOverG declared for `source`.
    EpiOverG epi(const std::string& source) const;
    bool has_epi(const std::string& source) const { return epis.count(source) != 0; }
};

/// Parses a word over the given generator names.
Word parse_word(std::string_view text, const std::vector<std::string>& gens);
/// `line` and `column` locate the text inside a larger file for error messages.
ExprPtr parse_word_expr(std::string_view text, const std::vector<std::string>& gens, int line = 1, int column = 0);

/// Parses the first group of a presentation file.
GroupPresentation parse_presentation(std::string_view text);
PresentationDocument parse_document(std::string_view text);

/// Serializes back into the line grammar.
std::string to_text(const GroupPresentation& p);

/// Presentation helpers used throughout the tests and the ledger.
GroupPresentation free_group(const std::string& name, const std::vector<std::string>& gens);
GroupPresentation trivial_group(const std::string& name = "1");
GroupPresentation free_abelian_group(const std::string& name, const std::vector<std::string>& gens);
/// F_r / gamma_{c+1}: relators are all left-normed commutators of weight c+1 in the generators.
GroupPresentation free_nilpotent_presentation(const std::string& name, const std::vector<std::string>& gens, int c);
/// Trefoil exterior <x,y | xyx = yxy> with meridian x and the 0-framed longitude.
GroupPresentation trefoil_group();
/// <t> with meridian t and trivial longitude.
GroupPresentation unknot_group(const std::string& gen = "t");

}  // namespace ck
