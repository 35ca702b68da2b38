#include <iostream>

#include "ayla/synth.hpp"

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    try {
        ayla::write_synth_datasets(dir);
    } catch (const std::exception& e) {
        std::cerr << "make_synth_data: " << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote synthetic datasets to " << dir << "\n";
    return 0;
}
