#include <iostream>

#include <conslaw/cli.hpp>

int main(int argc, char **argv)
{
    return conslaw::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
