#include <iostream>

#include "weilres/verify.hpp"

int main() {
    weilres::verify::Context ctx{WEILRES_DESCRIPTOR_DIR, {}};
    bool ok = true;
    for (const auto& r : weilres::verify::run(ctx)) {
        std::cout << weilres::verify::format_line(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
