#pragma once

#include <string>

#include "flatlab/delaunay.hpp"

namespace flatlab {

// Translation-equivalence invariant of a surface: the lexicographically
// minimal traversal encoding of its Delaunay cell decomposition (cocircular
// degeneracies kept as larger cells). Two presentations of the same marked
// surface over the same field produce identical keys.
struct CanonicalForm {
    std::string key;
    bool operator==(const CanonicalForm& o) const { return key == o.key; }
    bool operator!=(const CanonicalForm& o) const { return key != o.key; }
};

CanonicalForm canonical_form(const FlatSurface& s);
// Coerces coordinates into the given field first (for comparisons across
// surfaces whose natural fields differ).
CanonicalForm canonical_form(const FlatSurface& s, const FieldPtr& field);

FlatSurface surface_to_field(const FlatSurface& s, const FieldPtr& f);

}  // namespace flatlab
