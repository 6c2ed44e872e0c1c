#ifndef LOOPFORM_IO_HPP
#define LOOPFORM_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "loopform/green.hpp"
#include "loopform/kernel_coefficients.hpp"
#include "loopform/pairing.hpp"
#include "loopform/reduction.hpp"
#include "loopform/series.hpp"

namespace loopform::io {

using Json = nlohmann::json;

// Every reader throws std::invalid_argument naming the offending field.

/// {"rank": n, "lead": q, "coeffs": [ matrix, ... ]}, each matrix a list of
/// rank rows of [re, im] pairs, exponents ascending from lead.
MatrixLaurentSeries series_from_json(const Json& j);
Json to_json(const MatrixLaurentSeries& f);

/// {"nmin": k, "mmin": p, "a": [[[re, im], ...], ...], "rho_z": r1,
///  "rho_t": r2, "samples": N}; a[i][j] = a_{k+i, p+j}.
KernelCoefficients coefficients_from_json(const Json& j);
Json to_json(const KernelCoefficients& c);

/// {"kind": "sphere"} | {"kind": "plane"} | {"kind": "torus", "tau": [re, im]}
/// | {"kind": "synthetic", "table": <coefficient object or file path>}.
/// Relative table paths resolve against base_dir.
SurfaceKernel kernel_from_json(const Json& j, const std::filesystem::path& base_dir = {});

/// {"value": x, "complex": [re, im], "trunc": e, "method": "..."}.
Json to_json(const PairingResult& r);
PairingResult pairing_from_json(const Json& j);

/// {"rank", "grid": {"center", "half_width", "n"}, "points": [[re, im]...],
///  "phi": [matrix, ...]} with points and phi row-major over the grid.
Json to_json(const SampledForm& form);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);

/// Reads and parses a JSON file; throws std::invalid_argument on I/O or
/// syntax errors.
Json load_file(const std::filesystem::path& path);

/// Compact serialization followed by a newline.
void save_file(const std::filesystem::path& path, const Json& j);

}  // namespace loopform::io

#endif  // LOOPFORM_IO_HPP
