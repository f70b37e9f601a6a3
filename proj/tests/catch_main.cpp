// Single translation unit for the amalgamated Catch2 implementation (it
// supplies main()); test sources include only the header.
#include <catch2/catch_amalgamated.cpp>
