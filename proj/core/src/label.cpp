#include "tft/label.hpp"

namespace tft {

Label Label::parse(const std::string& text) {
    if (text == "*") return star();
    return of(big_from_string(text));
}

} // namespace tft
