// The shipped matrices, proof systems, and worked derivations. Everything is
// embedded in the library, validated on first access, and exportable as plain
// files in the module file formats.
#pragma once

#include "wk/calculus.hpp"
#include "wk/semantics.hpp"

#include <string>
#include <vector>

namespace wk {

enum class EntryKind { Matrix, System, Derivation, Claim };

std::string entry_kind_name(EntryKind k);

struct CorpusEntry {
    std::string id;
    EntryKind kind = EntryKind::Matrix;
    std::string payload; // serialized in the module file formats
    std::string note;    // one-line description of what the entry records
};

struct DerivationEntry {
    std::string id;
    DerivationDocument doc; // doc.system_id names the system it verifies in
    std::string note;
};

class Corpus {
public:
    // Parses and assembles every entry, then validates the whole corpus:
    // each derivation verifies in its system, each system's rules are sound
    // for the system's matrix, and the shipped claims hold. Throws
    // std::logic_error naming the failing entry otherwise.
    Corpus();

    const std::vector<std::string>& matrix_ids() const { return matrix_ids_; }
    const std::vector<std::string>& system_ids() const { return system_ids_; }
    const std::vector<std::string>& derivation_ids() const { return derivation_ids_; }

    const Matrix& get_matrix(const std::string& id) const;
    const HSystem& get_system(const std::string& id) const;
    const DerivationEntry& get_derivation(const std::string& id) const;

    // The matrix each system is judged against.
    const std::string& system_matrix_id(const std::string& system_id) const;
    const Matrix& system_matrix(const std::string& system_id) const;

    // Signature for reading and writing the system's formulas.
    const Signature& system_signature(const std::string& system_id) const;

    // Every entry (matrices, systems, derivations, claims) in catalog order.
    std::vector<CorpusEntry> entries() const;

    // Writes the entries under dir/matrices (<id>.mat), dir/systems
    // (<id>.sys), dir/derivations (<id>.drv) plus dir/claims.txt.
    // Returns the file count.
    int export_files(const std::string& dir) const;

private:
    struct SystemRecord {
        HSystem system;
        std::string matrix_id;
        Signature signature;
        std::string note;
    };

    std::vector<std::string> matrix_ids_;
    std::vector<std::string> system_ids_;
    std::vector<std::string> derivation_ids_;
    std::vector<std::pair<std::string, Matrix>> matrices_;
    std::vector<std::pair<std::string, SystemRecord>> systems_;
    std::vector<DerivationEntry> derivations_;
    std::vector<CorpusEntry> claims_;
    std::vector<std::string> matrix_notes_;

    void validate() const;
};

// Shared validated instance, built on first use.
const Corpus& corpus();

} // namespace wk
