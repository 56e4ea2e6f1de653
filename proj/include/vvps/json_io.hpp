#ifndef VVPS_JSON_IO_HPP
#define VVPS_JSON_IO_HPP

// JSON encodings. Complex numbers are [re, im]; matrices are row-major nested arrays.

#include <string>

#include <json.hpp>

#include "vvps/analysis.hpp"
#include "vvps/modgroup.hpp"
#include "vvps/multiplier.hpp"
#include "vvps/nonvanish.hpp"
#include "vvps/rep.hpp"
#include "vvps/seeds.hpp"
#include "vvps/series.hpp"

namespace vvps {

using Json = nlohmann::json;

Json encode(Complex z);
Json encode(const IntMatrix2& g);
Json encode(const GroupSpec& g);
Json encode(const CosetTable& t);
Json encode(const MultiplierSystem& ms);
Json encode(const CMatrix& m);
Json encode(const RepSpec& rep);
Json encode(const SpectralSplit& s);
Json encode(const SeedFn& f);
Json encode(const Point& tau, const SeriesValue& v);
Json encode(const FourierTable& t);
Json encode(const CriterionReport& r);

Complex decode_complex(const Json& j);
IntMatrix2 decode_matrix(const Json& j);
GroupSpec decode_group(const Json& j);
CosetTable decode_cosets(const Json& j);
MultiplierSystem decode_multiplier(const Json& j);
CMatrix decode_cmatrix(const Json& j);
RepSpec decode_rep(const Json& j);
SpectralSplit decode_split(const Json& j);
SeedFn decode_seed(const Json& j);
SeriesValue decode_series_value(const Json& j, Point* tau = nullptr);
FourierTable decode_fourier(const Json& j);
CriterionReport decode_report(const Json& j);

/// CSV with columns j,n,re,im.
std::string fourier_csv(const FourierTable& t);

}  // namespace vvps

#endif  // VVPS_JSON_IO_HPP
