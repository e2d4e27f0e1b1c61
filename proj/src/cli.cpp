#include <pslearn/cli.hpp>
#include <pslearn/encoding.hpp>
#include <pslearn/learner.hpp>
#include <pslearn/samplegen.hpp>
#include <pslearn/semantics.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace pslearn
{

namespace
{

using nlohmann::json;

class input_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw input_error( "cannot read '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output( std::string const& path, std::string const& text, std::ostream& out )
{
  if ( path.empty() || path == "-" )
  {
    out << text;
    return;
  }
  std::ofstream file( path, std::ios::binary );
  if ( !file || !( file << text ) )
    throw input_error( "cannot write '" + path + "'" );
}

/* FNV-1a, used as a stable content digest in reports */
std::string digest( std::string const& text )
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for ( unsigned char c : text )
  {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw( 16 ) << std::setfill( '0' ) << h;
  return os.str();
}

sample_format format_of( std::string const& name, std::string const& text )
{
  if ( name == "text" )
    return sample_format::text;
  if ( name == "json" )
    return sample_format::json;
  return detect_format( text );
}

std::string describe( parse_error const& e, std::string const& path )
{
  return path + ": " + e.what();
}

json iteration_json( iteration_stats const& it )
{
  return json{ { "n", it.n },
               { "m", it.m },
               { "copies", it.copies },
               { "variables", it.variables },
               { "clauses", it.clauses },
               { "verdict", to_string( it.verdict ) },
               { "retried", it.retried },
               { "build_seconds", it.build_seconds },
               { "solve_seconds", it.solve_seconds } };
}

json report_json( learner_result const& r, learning_mode mode, std::string const& input, std::string const& input_digest, std::uint64_t seed )
{
  json iterations = json::array();
  for ( auto const& it : r.iterations )
    iterations.push_back( iteration_json( it ) );
  json report{ { "mode", to_string( mode ) },
               { "input", input },
               { "input_digest", input_digest },
               { "seed", seed },
               { "outcome", to_string( r.outcome ) },
               { "formula", r.result ? json( to_string( *r.result ) ) : json() },
               { "size", r.result ? json( size( *r.result ) ) : json() },
               { "n", r.result ? json( r.n ) : json() },
               { "m", r.result ? json( r.m ) : json() },
               { "verified", r.verified },
               { "reason", r.reason },
               { "iterations", iterations },
               { "seconds", r.seconds } };
  return report;
}

void print_report( learner_result const& r, learning_mode mode, std::string const& input, std::string const& input_digest, std::ostream& out )
{
  out << "mode:     " << to_string( mode ) << '\n';
  out << "input:    " << input << " (" << input_digest << ")\n";
  out << "outcome:  " << to_string( r.outcome ) << '\n';
  if ( r.result )
  {
    out << "formula:  " << to_string( *r.result ) << '\n';
    out << "size:     " << size( *r.result ) << " (n = " << r.n << ", m = " << r.m << ")\n";
    out << "verified: " << ( r.verified ? "true" : "false" ) << '\n';
  }
  if ( !r.reason.empty() )
    out << "reason:   " << r.reason << '\n';
  out << "iterations:\n";
  out << "     n     m      b    variables      clauses  verdict   seconds\n";
  for ( auto const& it : r.iterations )
  {
    char line[160];
    std::snprintf( line, sizeof( line ), "  %4d  %4d  %5zu  %11zu  %11zu  %-7s  %8.3f%s\n", it.n, it.m, it.copies, it.variables,
                   it.clauses, to_string( it.verdict ), it.build_seconds + it.solve_seconds, it.retried ? "  (retried)" : "" );
    out << line;
  }
  char total[64];
  std::snprintf( total, sizeof( total ), "time:     %.3f s\n", r.seconds );
  out << total;
}

int exit_for( learn_outcome outcome )
{
  switch ( outcome )
  {
  case learn_outcome::found: return exit_found;
  case learn_outcome::exhausted: return exit_exhausted;
  case learn_outcome::timeout: return exit_timeout;
  }
  return exit_internal_error;
}

struct learn_options
{
  std::string input;
  std::string mode = "psl";
  std::string format = "auto";
  int max_size = 8;
  double timeout = 1800.0;
  std::optional<std::size_t> unroll_cap;
  std::size_t max_literals = 0u;
  std::size_t jobs = 1u;
  std::uint64_t seed = 0u;
  bool json_output = false;
  bool normalize = false;
};

int cmd_learn( learn_options const& o, std::ostream& out )
{
  auto const mode = parse_mode( o.mode );
  auto const text = read_file( o.input );
  auto const format = format_of( o.format, text );
  learner_config config;
  config.mode = mode;
  config.max_size = o.max_size;
  config.timeout = std::chrono::duration<double>( o.timeout );
  config.unroll_cap = o.unroll_cap;
  config.jobs = o.jobs;
  config.max_literals = o.max_literals;
  config.seed = o.seed;

  learner_result result;
  try
  {
    if ( mode == learning_mode::regex )
      result = learn( parse_finite_sample( text, format ), config );
    else
      result = learn( parse_sample( text, format, { o.normalize } ), config );
  }
  catch ( parse_error const& e )
  {
    throw input_error( describe( e, o.input ) );
  }
  auto const input_digest = digest( text );
  if ( o.json_output )
    out << report_json( result, mode, o.input, input_digest, o.seed ).dump( 2 ) << '\n';
  else
    print_report( result, mode, o.input, input_digest, out );
  return exit_for( result.outcome );
}

struct eval_options
{
  std::string input;
  std::string formula;
  std::string mode = "psl";
  std::string format = "auto";
  bool json_output = false;
  bool normalize = false;
};

int cmd_eval( eval_options const& o, std::ostream& out )
{
  auto const mode = parse_mode( o.mode );
  auto const text = read_file( o.input );
  auto const format = format_of( o.format, text );
  formula f = formula::tt();
  try
  {
    f = parse_formula( o.formula );
  }
  catch ( parse_error const& e )
  {
    throw input_error( describe( e, "--formula" ) );
  }

  json traces = json::array();
  bool consistent = true;
  auto const record = [&]( bool positive, std::size_t index, std::string const& rendered, bool satisfied ) {
    consistent = consistent && satisfied == positive;
    traces.push_back( { { "side", positive ? "positive" : "negative" }, { "index", index }, { "trace", rendered }, { "satisfied", satisfied } } );
    if ( !o.json_output )
      out << ( positive ? "positive " : "negative " ) << index << "  " << ( rendered.empty() ? "eps" : rendered ) << "  "
          << ( satisfied ? "true" : "false" ) << '\n';
  };
  try
  {
    if ( mode == learning_mode::regex )
    {
      auto const s = parse_finite_sample( text, format );
      if ( !f.is_regex() )
        throw input_error( "not a regular expression: " + to_string( f ) );
      for ( std::size_t k = 0u; k < s.positives().size(); ++k )
        record( true, k, format_word( s.positives()[k], s.propositions().size() ), match_full( f, s.positives()[k], s.propositions() ) );
      for ( std::size_t k = 0u; k < s.negatives().size(); ++k )
        record( false, k, format_word( s.negatives()[k], s.propositions().size() ), match_full( f, s.negatives()[k], s.propositions() ) );
    }
    else
    {
      auto const s = parse_sample( text, format, { o.normalize } );
      evaluator const eval( f, s.propositions() );
      for ( std::size_t k = 0u; k < s.positives().size(); ++k )
        record( true, k, format_lasso( s.positives()[k], s.propositions().size() ), eval.evaluate( s.positives()[k] ) );
      for ( std::size_t k = 0u; k < s.negatives().size(); ++k )
        record( false, k, format_lasso( s.negatives()[k], s.propositions().size() ), eval.evaluate( s.negatives()[k] ) );
    }
  }
  catch ( parse_error const& e )
  {
    throw input_error( describe( e, o.input ) );
  }
  if ( o.json_output )
    out << json{ { "formula", to_string( f ) }, { "traces", traces }, { "consistent", consistent } }.dump( 2 ) << '\n';
  else
    out << ( consistent ? "true" : "false" ) << '\n';
  return 0;
}

struct gen_options
{
  std::string formula;
  std::string props;
  std::string output;
  std::string format = "text";
  std::size_t max_length = 15u;
  std::size_t count = 100u;
  std::uint64_t seed = 0u;
  std::size_t family = 0u;
  bool balance = false;
  bool swap = false;
};

std::vector<std::string> split_names( std::string const& text )
{
  std::vector<std::string> names;
  std::stringstream ss( text );
  std::string name;
  while ( std::getline( ss, name, ',' ) )
  {
    auto const first = name.find_first_not_of( " \t" );
    auto const last = name.find_last_not_of( " \t" );
    if ( first == std::string::npos )
      throw input_error( "empty proposition name in --props" );
    names.push_back( name.substr( first, last - first + 1u ) );
  }
  return names;
}

sample swapped( sample const& s )
{
  return sample( s.propositions(), s.negatives(), s.positives() );
}

int cmd_gen( gen_options const& o, std::ostream& out )
{
  auto const format = o.format == "json" ? sample_format::json : sample_format::text;
  if ( o.family != 0u )
  {
    if ( !o.formula.empty() )
      throw input_error( "--family and --formula are mutually exclusive" );
    write_output( o.output, serialize( succinctness_family( o.family, o.swap ), format ), out );
    return 0;
  }
  if ( o.formula.empty() )
    throw input_error( "gen needs --formula or --family" );
  formula seed = formula::tt();
  try
  {
    seed = parse_formula( o.formula );
  }
  catch ( parse_error const& e )
  {
    throw input_error( describe( e, "--formula" ) );
  }
  auto const names = o.props.empty() ? propositions_of( seed ) : split_names( o.props );
  if ( names.empty() )
    throw input_error( "the seed formula mentions no proposition; pass --props" );
  gen_spec spec{ seed, proposition_set( names ), o.count, o.max_length, o.seed, o.balance ? balance_policy::equalize : balance_policy::none };
  auto s = generate( spec );
  if ( o.swap )
    s = swapped( s );
  write_output( o.output, serialize( s, format ), out );
  return 0;
}

struct export_options
{
  std::string input;
  std::string output;
  std::string map;
  std::string mode = "psl";
  std::string format = "auto";
  int n = 1;
  int m = 0;
  std::optional<std::size_t> unroll_cap;
  bool comments = false;
  bool normalize = false;
};

int cmd_export( export_options const& o, std::ostream& out )
{
  auto const mode = parse_mode( o.mode );
  auto const text = read_file( o.input );
  auto const format = format_of( o.format, text );
  encoding_options options;
  options.unroll_cap = o.unroll_cap;
  std::optional<encoder> enc;
  try
  {
    if ( mode == learning_mode::regex )
      enc.emplace( build_phi( parse_finite_sample( text, format ), o.n, options ) );
    else
      enc.emplace( build_phi( parse_sample( text, format, { o.normalize } ), { o.n, o.m }, mode, options ) );
  }
  catch ( parse_error const& e )
  {
    throw input_error( describe( e, o.input ) );
  }
  write_output( o.output, export_dimacs( enc->clauses(), o.comments ? &enc->variables() : nullptr ), out );
  if ( !o.map.empty() )
  {
    std::ostringstream tsv;
    enc->variables().write_tsv( tsv );
    write_output( o.map, tsv.str(), out );
  }
  return 0;
}

} // namespace

int run_cli( int argc, char const* const* argv, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Exact learner for minimal temporal formulas with triggers from example traces" };
  app.name( "pslearn" );
  app.require_subcommand( 1 );
  app.set_help_all_flag( "--help-all", "Show help for all subcommands" );

  auto const mode_check = CLI::IsMember( { "psl", "ltl", "regex" } );
  auto const format_check = CLI::IsMember( { "auto", "text", "json" } );

  learn_options lo;
  auto* learn_cmd = app.add_subcommand( "learn", "Learn a minimal formula consistent with a sample" );
  learn_cmd->add_option( "sample", lo.input, "Sample file (text or JSON)" )->required();
  learn_cmd->add_option( "--mode", lo.mode, "psl, ltl or regex" )->check( mode_check )->capture_default_str();
  learn_cmd->add_option( "--format", lo.format, "Sample format: auto, text or json" )->check( format_check )->capture_default_str();
  learn_cmd->add_option( "--max-size", lo.max_size, "Largest formula size to try" )->check( CLI::PositiveNumber )->capture_default_str();
  learn_cmd->add_option( "--timeout", lo.timeout, "Global time limit in seconds" )->check( CLI::PositiveNumber )->capture_default_str();
  learn_cmd->add_option( "--unroll-cap", lo.unroll_cap, "Cap on the copies of the period (results are re-verified)" )->check( CLI::PositiveNumber );
  learn_cmd->add_option( "--max-literals", lo.max_literals, "Report a timeout for instances beyond this many literals" );
  learn_cmd->add_option( "--jobs", lo.jobs, "Budgets solved concurrently" )->check( CLI::PositiveNumber )->capture_default_str();
  learn_cmd->add_option( "--seed", lo.seed, "Solver randomization seed" )->capture_default_str();
  learn_cmd->add_flag( "--json", lo.json_output, "Print the report as JSON" );
  learn_cmd->add_flag( "--normalize", lo.normalize, "Reduce every trace to its normal form" );

  eval_options eo;
  auto* eval_cmd = app.add_subcommand( "eval", "Check a formula against a sample" );
  eval_cmd->add_option( "sample", eo.input, "Sample file (text or JSON)" )->required();
  eval_cmd->add_option( "--formula,-f", eo.formula, "Formula to evaluate" )->required();
  eval_cmd->add_option( "--mode", eo.mode, "psl/ltl for lasso samples, regex for finite words" )->check( mode_check )->capture_default_str();
  eval_cmd->add_option( "--format", eo.format, "Sample format: auto, text or json" )->check( format_check )->capture_default_str();
  eval_cmd->add_flag( "--json", eo.json_output, "Print the verdicts as JSON" );
  eval_cmd->add_flag( "--normalize", eo.normalize, "Reduce every trace to its normal form" );

  gen_options go;
  auto* gen_cmd = app.add_subcommand( "gen", "Generate a sample from a seed formula" );
  gen_cmd->add_option( "--formula,-f", go.formula, "Seed formula" );
  gen_cmd->add_option( "--props", go.props, "Comma-separated propositions (default: those of the formula)" );
  gen_cmd->add_option( "--max-len", go.max_length, "Bound on |u| + |v|" )->check( CLI::PositiveNumber )->capture_default_str();
  gen_cmd->add_option( "--count", go.count, "Words drawn before deduplication" )->capture_default_str();
  gen_cmd->add_option( "--seed", go.seed, "Random seed" )->capture_default_str();
  gen_cmd->add_option( "--family", go.family, "Emit the two-word succinctness sample of index N instead" );
  gen_cmd->add_option( "--format", go.format, "text or json" )->check( CLI::IsMember( { "text", "json" } ) )->capture_default_str();
  gen_cmd->add_option( "--output,-o", go.output, "Output file (default: stdout)" );
  gen_cmd->add_flag( "--balance", go.balance, "Truncate the larger side to the size of the smaller one" );
  gen_cmd->add_flag( "--swap", go.swap, "Exchange positives and negatives" );

  export_options xo;
  auto* export_cmd = app.add_subcommand( "export-cnf", "Write the DIMACS instance for one node budget" );
  export_cmd->add_option( "sample", xo.input, "Sample file (text or JSON)" )->required();
  export_cmd->add_option( "--n", xo.n, "Number of nodes" )->check( CLI::PositiveNumber )->capture_default_str();
  export_cmd->add_option( "--m", xo.m, "Number of regular-expression nodes" )->check( CLI::NonNegativeNumber )->capture_default_str();
  export_cmd->add_option( "--mode", xo.mode, "psl, ltl or regex" )->check( mode_check )->capture_default_str();
  export_cmd->add_option( "--format", xo.format, "Sample format: auto, text or json" )->check( format_check )->capture_default_str();
  export_cmd->add_option( "--unroll-cap", xo.unroll_cap, "Cap on the copies of the period" )->check( CLI::PositiveNumber );
  export_cmd->add_option( "--output,-o", xo.output, "Output file (default: stdout)" );
  export_cmd->add_option( "--map", xo.map, "Also write the variable map as tab-separated text" );
  export_cmd->add_flag( "--comments", xo.comments, "Prefix the DIMACS with one comment line per variable" );
  export_cmd->add_flag( "--normalize", xo.normalize, "Reduce every trace to its normal form" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e, out, err );
    return code == 0 ? 0 : exit_input_error;
  }

  try
  {
    if ( *learn_cmd )
      return cmd_learn( lo, out );
    if ( *eval_cmd )
      return cmd_eval( eo, out );
    if ( *gen_cmd )
      return cmd_gen( go, out );
    if ( *export_cmd )
    {
      if ( xo.mode == "regex" )
        xo.m = xo.n;
      return cmd_export( xo, out );
    }
  }
  catch ( input_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  catch ( parse_error const& e )
  {
    err << "error: " << describe( e, "input" ) << '\n';
    return exit_input_error;
  }
  catch ( type_error const& e )
  {
    err << "error: type error: " << e.what() << '\n';
    return exit_input_error;
  }
  catch ( sample_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  catch ( std::invalid_argument const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  catch ( std::exception const& e )
  {
    err << "internal error: " << e.what() << '\n';
    return exit_internal_error;
  }
  return exit_input_error;
}

} // namespace pslearn
