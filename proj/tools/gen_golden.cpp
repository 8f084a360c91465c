// Regenerates the golden tables under data/golden.  Used once to freeze the
// files; reproduce-tables then compares byte-for-byte.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "parmonge/tables.hpp"

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data/golden";
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : parmonge::tables::generate_all()) {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
        std::cout << "wrote " << (dir / name).string() << "\n";
    }
    return 0;
}
