#pragma once

#include <string>
#include <vector>

#include "homlab/core.hpp"

namespace homlab {

/// One checked configuration inside an experiment, with a short result line.
struct ExperimentCase {
    std::string label;
    bool passed = false;
    std::string detail;
};

/// A named experiment run: scripted compositions of library operations whose
/// success is theorem-backed, so a failing case points at a bug.
struct ExperimentReport {
    std::string name;
    bool passed = false;
    std::vector<ExperimentCase> cases;
};

/// Source/target pairs over one binary symbol "E": a fixed named family plus
/// seeded pseudo-random pairs (|source| up to 4, |target| up to 3), shared by
/// the oracle tests and the round-trip experiments.
struct CorpusPair {
    Structure source;
    Structure target;
};
std::vector<CorpusPair> standard_corpus(int random_pairs = 60, unsigned seed = 2024);

/// Round trip between colorings of the 3-clique power and ultrafilters: every
/// enumerated coloring extracts to an ultrafilter containing the filter, and
/// extraction inverts evaluation on every ultrafilter extension.
ExperimentReport lauchli_roundtrip(int index_size = 2);

/// Structure laws of tolerant powers: the agreement quotient is isomorphic to
/// the ordinary power on the filter base, substitution invariance holds, and
/// the canonical embedding round-trips into a valid homomorphism exactly when
/// one exists.
ExperimentReport com_ft_roundtrip();

/// The 3-edge path gadget pp-defines the 5-clique adjacency over the 5-cycle,
/// and every enumerated coloring of a 5-cycle power lifts to a coloring of
/// the corresponding clique power.
ExperimentReport pp_lift();

/// The prime-power induction step: transporting a coloring from the p^(k+1)
/// cycle power down to the p^k cycle, then lifting it back up through the
/// auxiliary path-reachability structures and a solver-chosen component
/// coloring, yields a validated coloring of the p^(k+1) cycle quotient.
ExperimentReport pk_induction();

}  // namespace homlab
