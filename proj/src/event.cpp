#include "pairsim/event.hpp"

#include "pairsim/errors.hpp"

namespace pairsim {

const char* to_string(Channel c) {
  switch (c) {
    case Channel::Hydrogen: return "hydrogen";
    case Channel::Carbon: return "carbon";
    case Channel::Background: return "background";
    case Channel::RandomPair: return "random";
  }
  throw ConfigError("unknown channel");
}

Channel channel_from_string(const std::string& s) {
  if (s == "hydrogen") return Channel::Hydrogen;
  if (s == "carbon") return Channel::Carbon;
  if (s == "background") return Channel::Background;
  if (s == "random") return Channel::RandomPair;
  throw DataError("unknown channel tag '" + s + "'");
}

}  // namespace pairsim
