#include <gkdim/cli.hpp>

int main(int argc, char **argv)
{
    return gkdim::cli::main_entry(argc, argv);
}
