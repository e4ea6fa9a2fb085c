#pragma once

// JSON encodings shared by the command-line tool and the checkers' witnesses.
//
//   finsetinj object   {"site":"finsetinj","size":n}
//   finsetinj arrow    {"dom":m,"cod":n,"map":[...]}
//   itree object       {"site":"itree","root":id,"nodes":[{"id","kind","children"|"label"}]}
//   itree arrow        {"source":tree,"target":tree,
//                       "explicit_images":{"<source id>":"<bits>"},
//                       "tail_routes":{"<source tail id>":<target tail id>}}
//   atom               {"base":object,"generators":[arrow...]}
//   fragment           {"site":s,"objects":[object...],"elements":{"<object key>":[name...]},
//                       "action":{"<arrow key>":[index...]}}
//
// Decoded trees are re-encoded in canonical form; arrows between them are
// transported along the canonicalizing isomorphisms.

#include <optional>

#include "json.hpp"
#include "atomkit/atoms.hpp"
#include "atomkit/presheaf.hpp"
#include "atomkit/site.hpp"

namespace atomkit::json_io {

using nlohmann::json;

json encode(const ObjectRef& o);
json encode(const Morphism& m);
json encode(const AutGroup& g);

/// Throws ValidationError naming the offending field, or BackendError when
/// the document belongs to a different site than expected.
ObjectRef decode_object(const json& j, std::optional<Backend> expected = std::nullopt);
Morphism decode_morphism(const json& j, Backend backend);

json encode(const FormalAtom& a);
FormalAtom decode_atom(const json& j, Backend backend);

json encode(const PresheafFragment& f);
PresheafFragment decode_fragment(const json& j, Backend backend);

}  // namespace atomkit::json_io
