#include "support.hpp"

#include <pslearn/cli.hpp>
#include <pslearn/cnf.hpp>
#include <pslearn/encoding.hpp>
#include <pslearn/solver.hpp>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace pslearn;
using namespace pslearn::testing;
namespace fs = std::filesystem;

namespace
{

struct run_result
{
  int code;
  std::string out;
  std::string err;
};

run_result run( std::vector<std::string> args )
{
  args.insert( args.begin(), "pslearn" );
  std::vector<char const*> argv;
  for ( auto const& a : args )
    argv.push_back( a.c_str() );
  std::ostringstream out, err;
  auto const code = run_cli( static_cast<int>( argv.size() ), argv.data(), out, err );
  return { code, out.str(), err.str() };
}

fs::path scratch_dir()
{
  auto const dir = fs::temp_directory_path() / ( "pslearn_cli_" + std::to_string( ::getpid() ) );
  fs::create_directories( dir );
  return dir;
}

std::string write( std::string const& name, std::string const& content )
{
  auto const path = scratch_dir() / name;
  std::ofstream( path ) << content;
  return path.string();
}

std::string last_line( std::string const& text )
{
  auto end = text.find_last_not_of( '\n' );
  auto const start = text.rfind( '\n', end );
  return text.substr( start == std::string::npos ? 0u : start + 1u, end - ( start == std::string::npos ? 0u : start + 1u ) + 1u );
}

} // namespace

TEST_CASE( "learn" )
{
  auto const simple = write( "simple.txt", "p\n1::1\n---\n0::0\n" );
  auto const text = run( { "learn", "--mode", "psl", simple } );
  CHECK( text.code == 0 );
  CHECK( text.out.find( "formula:  p\n" ) != std::string::npos );

  auto const json_run = run( { "learn", "--json", simple } );
  REQUIRE( json_run.code == 0 );
  auto const report = nlohmann::json::parse( json_run.out );
  CHECK( report["formula"] == "p" );
  CHECK( report["outcome"] == "FOUND" );
  CHECK( report["size"] == 1 );
  CHECK( report["verified"] == true );
  CHECK( report["iterations"].size() == 1u );
  CHECK( parse_formula( report["formula"].get<std::string>() ) == formula::prop( "p" ) );

  auto const deep = write( "deep.txt", "p\n0;0::1\n---\n0;0::0\n" );
  CHECK( run( { "learn", "--mode", "ltl", "--max-size", "2", deep } ).code == 2 );
  CHECK( run( { "learn", "--mode", "ltl", "--max-size", "3", deep } ).code == 0 );
  CHECK( run( { "learn", "--max-literals", "10", deep } ).code == 3 );

  auto const missing = run( { "learn", ( scratch_dir() / "missing.txt" ).string() } );
  CHECK( missing.code == 1 );
  CHECK_FALSE( missing.err.empty() );
  CHECK( run( { "learn", write( "broken.txt", "p\n1::\n" ) } ).code == 1 );
  CHECK( run( { "learn", "--mode", "bogus", simple } ).code == 1 );
  CHECK( run( {} ).code == 1 );
  CHECK( run( { "--help" } ).code == 0 );

  auto const regex = write( "regex.txt", "p,q\n10;01\n---\n01;10\n" );
  auto const regex_run = run( { "learn", "--mode", "regex", "--json", regex } );
  REQUIRE( regex_run.code == 0 );
  CHECK( nlohmann::json::parse( regex_run.out )["size"] == 3 );
}

TEST_CASE( "eval" )
{
  auto const trace = write( "unroll.txt", "p\n0;1::0\n" );
  auto const r = run( { "eval", "--formula", "{(tt . tt)*} |-> p", trace } );
  CHECK( r.code == 0 );
  CHECK( last_line( r.out ) == "false" );
  CHECK( last_line( run( { "eval", "-f", "!p", trace } ).out ) == "true" );

  auto const json_run = run( { "eval", "--json", "-f", "p", write( "two.txt", "p\n1::1\n---\n0::0\n" ) } );
  auto const report = nlohmann::json::parse( json_run.out );
  CHECK( report["consistent"] == true );
  CHECK( report["traces"].size() == 2u );

  CHECK( run( { "eval", "-f", "{p U q} |-> p", trace } ).code == 1 );
  CHECK( run( { "eval", "-f", "(p", trace } ).code == 1 );
  auto const regex = write( "regex_eval.txt", "p,q\n10;01\n---\n01;10\n" );
  CHECK( last_line( run( { "eval", "--mode", "regex", "-f", "p . q", regex } ).out ) == "true" );
  CHECK( last_line( run( { "eval", "--mode", "regex", "-f", "q . p", regex } ).out ) == "false" );
  CHECK( run( { "eval", "--mode", "regex", "-f", "{p . q} |-> p", regex } ).code == 1 );
}

TEST_CASE( "gen" )
{
  auto const r = run( { "gen", "--formula", "p", "--props", "p", "--max-len", "1" } );
  REQUIRE( r.code == 0 );
  auto const s = parse_sample( r.out, sample_format::text );
  CHECK( s.size() == 2u );

  auto const family = run( { "gen", "--family", "1", "--swap" } );
  auto const swapped = parse_sample( family.out, sample_format::text );
  CHECK( swapped.positives()[0] == lasso( "1;1;1;0", "1" ) );

  auto const out_file = ( scratch_dir() / "generated.json" ).string();
  CHECK( run( { "gen", "-f", "{(p1 . p2)*} |-> q", "--seed", "5", "--format", "json", "-o", out_file } ).code == 0 );
  std::ifstream in( out_file );
  std::stringstream content;
  content << in.rdbuf();
  CHECK( detect_format( content.str() ) == sample_format::json );
  CHECK( run( { "gen", "-f", "p | !p", "--max-len", "3" } ).code == 1 );
  CHECK( run( { "gen" } ).code == 1 );
}

TEST_CASE( "export-cnf" )
{
  auto const simple = write( "simple_cnf.txt", "p\n1::1\n---\n0::0\n" );
  auto const r = run( { "export-cnf", "--n", "1", "--m", "0", simple } );
  REQUIRE( r.code == 0 );
  auto const parsed = parse_dimacs( r.out );
  auto const result = solve( parsed );
  REQUIRE( result.status == solve_status::sat );
  auto const s = parse_sample( "p\n1::1\n---\n0::0\n", sample_format::text );
  auto const enc = build_phi( s, { 1, 0 }, learning_mode::psl );
  CHECK( parsed == enc.clauses() );
  CHECK( decode( enc.extract( result.model ), s.propositions(), true ) == formula::prop( "p" ) );

  auto const map = ( scratch_dir() / "map.tsv" ).string();
  auto const with_comments = run( { "export-cnf", "--n", "2", "--m", "1", "--comments", "--map", map, simple } );
  CHECK( with_comments.out.rfind( "c 1 x 1 0", 0 ) == 0 );
  CHECK( fs::file_size( map ) > 0u );
  CHECK( run( { "export-cnf", "--n", "2", "--m", "2", simple } ).code == 1 );
  CHECK( run( { "export-cnf", "--n", "2", "--m", "1", simple } ).out == run( { "export-cnf", "--n", "2", "--m", "1", simple } ).out );
}
