#include <pslearn/cli.hpp>

#include <iostream>

int main( int argc, char** argv )
{
  return pslearn::run_cli( argc, argv, std::cout, std::cerr );
}
