#pragma once

#include "addiviol/conjpair.hpp"
#include "addiviol/minentropy.hpp"
#include "addiviol/multicopy.hpp"
#include "addiviol/subspace.hpp"
#include "addiviol/upb.hpp"

#include <json.hpp>

#include <string>

namespace addiviol {

// Subspace document: {d_A, d_B, k, basis} with basis a flat row-major list
// of [re, im] pairs (row r, column c at index r*k + c).
nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j);
Subspace load_subspace(const std::string& path);
void save_subspace(const Subspace& s, const std::string& path);

// Product basis document: {d_A, d_B, members: [{a: [[re,im]..], b: [[re,im]..]}]}.
nlohmann::json product_basis_to_json(const ProductBasis& pb);
ProductBasis product_basis_from_json(const nlohmann::json& j);
ProductBasis load_product_basis(const std::string& path);

nlohmann::json spectrum_to_json(const SchmidtSpectrum& s);
nlohmann::json to_json(const ViolationReport& rep);
nlohmann::json to_json(const ScanResult& scan);
nlohmann::json to_json(const MinEntropyResult& res);
nlohmann::json to_json(const MultiCopyResult& res);
nlohmann::json to_json(const UpbCertificate& cert);
nlohmann::json to_json(const P0AdditivityReport& rep);

}  // namespace addiviol
