#pragma once

#include <json.hpp>

#include "gconv/derive.hpp"

namespace gconv {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

Json to_json(const Element& x);
Element element_from_json(const GroupSpec& g, const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"group":..., "matrix":[...]}; the group may be omitted when `fallback` is given.
Json to_json(const Endo& t);
Endo endo_from_json(const Json& j, const GroupRef& fallback = nullptr);

Json to_json(const EndoSet& s);
EndoSet endo_set_from_json(const Json& j, const GroupRef& fallback = nullptr);

/// Generator -> image pairs.
Json to_json(const PartialHom& h);
PartialHom partial_hom_from_json(const Json& j, const GroupRef& fallback = nullptr);

Json to_json(const GroundSet& s);
GroundSet ground_set_from_json(const Json& j, const GroupRef& fallback = nullptr);

Json to_json(const ExtValue& v);
ExtValue ext_from_json(const Json& j);

Json to_json(const FnRepr& f);
FnRepr fn_from_json(const Json& j, const GroupRef& fallback = nullptr);

Json to_json(const ConvexPair& p);
ConvexPair pair_from_json(const Json& j, const GroupRef& fallback = nullptr);

Json to_json(const AuditEntry& e);
AuditEntry audit_from_json(const Json& j);

Json to_json(const Report& r);
Report report_from_json(const Json& j);

Json to_json(const Interval& i);
Json to_json(const IntervalResult& r);
Json to_json(const SpectralBound& b);
Json to_json(const NeumannInverse& n);

Json to_json(const DerivedPair& d);
DerivedPair derived_from_json(const Json& j, const GroupRef& fallback = nullptr);

Json to_json(const WrightDecomposition& w);
Json to_json(const AffineDecomposition& a);
Json to_json(const LastResult& r);
Json to_json(const SupportCertificate& c);
Json to_json(const SupportResult& r);

}  // namespace gconv
