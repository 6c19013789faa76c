#include "liesym/chart.hpp"

#include "liesym/errors.hpp"

#include <algorithm>
#include <set>

namespace liesym {

bool Chart::is_angle(const std::string &c) const {
  return std::find(angles.begin(), angles.end(), c) != angles.end();
}

std::vector<std::string> Chart::dots() const {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < coords.size(); ++i)
    v.push_back(dot(i));
  return v;
}

std::vector<std::string> Chart::ddots() const {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < coords.size(); ++i)
    v.push_back(ddot(i));
  return v;
}

int Chart::index_of(const std::string &c) const {
  auto it = std::find(coords.begin(), coords.end(), c);
  return it == coords.end() ? -1 : static_cast<int>(it - coords.begin());
}

void Chart::validate() const {
  if (coords.empty())
    throw MathError("chart has no coordinates");
  if (param.empty())
    throw MathError("chart has no parameter");
  std::set<std::string> names{param};
  for (const auto &c : coords)
    if (!names.insert(c).second)
      throw MathError("duplicate name '" + c + "' in chart");
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (const auto &j : {dot(i), ddot(i)})
      if (!names.insert(j).second)
        throw MathError("jet symbol '" + j + "' collides with another name");
  for (const auto &a : angles)
    if (index_of(a) < 0)
      throw MathError("angle '" + a + "' is not a coordinate");
  for (const auto &[f, args] : functions) {
    if (names.count(f))
      throw MathError("function name '" + f + "' collides with a coordinate");
    for (const auto &a : args)
      if (a != param && index_of(a) < 0)
        throw MathError("function '" + f + "' argument '" + a + "' is not a coordinate");
  }
}

} // namespace liesym
