#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tempered/atomic_measure.hpp"
#include "tempered/block_measure.hpp"
#include "tempered/compact_function.hpp"
#include "tempered/fourier.hpp"
#include "tempered/report.hpp"
#include "tempered/schwartz.hpp"

namespace tempered {

using Json = nlohmann::ordered_json;

// Decimal with 17 significant digits ("%.17g"); parses back to the same double.
std::string format_double(double x);

// {"dim": d, "atoms": [{"x": [..], "re": .., "im": ..}, ...]}
Json to_json(const AtomicMeasure& mu);
AtomicMeasure atomic_measure_from_json(const Json& j);

// {"factors": [...], "shift": [..], "scale": ..}
Json to_json(const ProductMeasure& p);
ProductMeasure product_measure_from_json(const Json& j);

Json to_json(const BlockMeasure& mu);
Json to_json(const Window& w);
Json to_json(const SupEstimate& s);
Json to_json(const ClaimReport& r);

// {"k": [...], "c": [...], "dim": d}
Json to_json(const PlateauSchwartz& psi);
PlateauSchwartz plateau_from_json(const Json& j);

// JSON text with every number written through format_double.
std::string dump(const Json& j, int indent = 2);

// t,re,im,abs rows over the grid points k * step inside the window.
void write_ft_samples_csv(std::ostream& os, const FTEvaluator& e, const Window& window, double step);

// x,g(x) rows at `samples` equally spaced points of [-R, R].
void write_density_csv(std::ostream& os, const CompactFunction& g, std::size_t samples);

// alpha,beta,value,method rows.
void write_seminorm_csv(std::ostream& os, const std::vector<SeminormEstimate>& rows);

}  // namespace tempered
