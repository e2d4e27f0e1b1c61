#include <pslearn/trace.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace pslearn
{

namespace
{

bool is_identifier( std::string_view name )
{
  if ( name.empty() )
    return false;
  auto const alpha = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || c == '_'; };
  auto const digit = []( char c ) { return c >= '0' && c <= '9'; };
  if ( !alpha( name.front() ) )
    return false;
  return std::all_of( name.begin(), name.end(), [&]( char c ) { return alpha( c ) || digit( c ); } );
}

bool is_reserved( std::string_view name )
{
  static constexpr std::string_view reserved[] = { "X", "F", "G", "U", "true", "false", "tt", "ff", "eps" };
  return std::find( std::begin( reserved ), std::end( reserved ), name ) != std::end( reserved );
}

std::string_view trim( std::string_view s )
{
  while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ) )
    s.remove_prefix( 1u );
  while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ) )
    s.remove_suffix( 1u );
  return s;
}

std::vector<std::string_view> split_lines( std::string_view text )
{
  std::vector<std::string_view> lines;
  std::size_t start = 0u;
  while ( start <= text.size() )
  {
    auto const end = text.find( '\n', start );
    if ( end == std::string_view::npos )
    {
      if ( start < text.size() )
        lines.push_back( text.substr( start ) );
      break;
    }
    lines.push_back( text.substr( start, end - start ) );
    start = end + 1u;
  }
  return lines;
}

template<typename T>
std::vector<T> deduplicate( std::vector<T> items )
{
  std::vector<T> result;
  std::set<T> seen;
  for ( auto& item : items )
    if ( seen.insert( item ).second )
      result.push_back( std::move( item ) );
  return result;
}

/* text format */

struct text_cursor
{
  std::size_t line;
  std::size_t column_base;
};

symbol parse_bits( std::string_view token, std::size_t num_propositions, text_cursor where )
{
  auto const stripped = trim( token );
  if ( stripped.size() != num_propositions )
    throw parse_error( "symbol '" + std::string( stripped ) + "' must have exactly " +
                           std::to_string( num_propositions ) + " bits",
                       where.line, where.column_base + 1u );
  symbol a;
  for ( std::size_t p = 0u; p < stripped.size(); ++p )
  {
    if ( stripped[p] == '1' )
      a.set( p );
    else if ( stripped[p] != '0' )
      throw parse_error( "expected '0' or '1' in symbol", where.line, where.column_base + p + 1u );
  }
  return a;
}

finite_word parse_symbols( std::string_view text, std::size_t num_propositions, text_cursor where )
{
  finite_word word;
  if ( trim( text ).empty() )
    return word;
  std::size_t start = 0u;
  while ( true )
  {
    auto const end = text.find( ';', start );
    auto const token = text.substr( start, end == std::string_view::npos ? std::string_view::npos : end - start );
    word.push_back( parse_bits( token, num_propositions, { where.line, where.column_base + start } ) );
    if ( end == std::string_view::npos )
      break;
    start = end + 1u;
  }
  return word;
}

proposition_set parse_header( std::string_view line )
{
  std::vector<std::string> names;
  std::size_t start = 0u;
  while ( true )
  {
    auto const end = line.find( ',', start );
    auto const name = trim( line.substr( start, end == std::string_view::npos ? std::string_view::npos : end - start ) );
    names.emplace_back( name );
    if ( end == std::string_view::npos )
      break;
    start = end + 1u;
  }
  try
  {
    return proposition_set( std::move( names ) );
  }
  catch ( std::invalid_argument const& e )
  {
    throw parse_error( e.what(), 1u, 1u );
  }
}

lasso_word parse_lasso_line( std::string_view line, std::size_t num_propositions, std::size_t line_number )
{
  auto const sep = line.find( "::" );
  if ( sep == std::string_view::npos )
    throw parse_error( "trace must have the form prefix::period", line_number, 1u );
  auto prefix = parse_symbols( line.substr( 0u, sep ), num_propositions, { line_number, 0u } );
  auto period = parse_symbols( line.substr( sep + 2u ), num_propositions, { line_number, sep + 2u } );
  if ( period.empty() )
    throw parse_error( "the period of a trace must be nonempty", line_number, sep + 3u );
  return lasso_word( std::move( prefix ), std::move( period ) );
}

template<typename Word, typename LineParser>
void parse_text_body( std::vector<std::string_view> const& lines, bool skip_blank,
                      std::vector<Word>& positives, std::vector<Word>& negatives, LineParser&& parse_line )
{
  bool negative = false;
  for ( std::size_t l = 1u; l < lines.size(); ++l )
  {
    auto const line = lines[l];
    if ( trim( line ) == "---" )
    {
      if ( negative )
        throw parse_error( "duplicate '---' separator", l + 1u, 1u );
      negative = true;
      continue;
    }
    if ( skip_blank && trim( line ).empty() )
      continue;
    ( negative ? negatives : positives ).push_back( parse_line( line, l + 1u ) );
  }
}

/* JSON format */

symbol json_symbol( nlohmann::json const& bits, std::size_t num_propositions )
{
  if ( !bits.is_array() || bits.size() != num_propositions )
    throw parse_error( "JSON symbol must be an array of " + std::to_string( num_propositions ) + " bits" );
  symbol a;
  for ( std::size_t p = 0u; p < num_propositions; ++p )
  {
    auto const& bit = bits[p];
    if ( !bit.is_number_integer() || ( bit.get<int>() != 0 && bit.get<int>() != 1 ) )
      throw parse_error( "JSON symbol entries must be 0 or 1" );
    a.set( p, bit.get<int>() == 1 );
  }
  return a;
}

finite_word json_word( nlohmann::json const& symbols, std::size_t num_propositions )
{
  if ( !symbols.is_array() )
    throw parse_error( "JSON word must be an array of symbols" );
  finite_word word;
  for ( auto const& bits : symbols )
    word.push_back( json_symbol( bits, num_propositions ) );
  return word;
}

nlohmann::json json_of_word( finite_word const& word, std::size_t num_propositions )
{
  auto result = nlohmann::json::array();
  for ( auto const a : word )
  {
    auto bits = nlohmann::json::array();
    for ( std::size_t p = 0u; p < num_propositions; ++p )
      bits.push_back( a.has( p ) ? 1 : 0 );
    result.push_back( std::move( bits ) );
  }
  return result;
}

nlohmann::json parse_json_document( std::string_view text )
{
  try
  {
    return nlohmann::json::parse( text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw parse_error( std::string( "invalid JSON: " ) + e.what() );
  }
}

proposition_set json_propositions( nlohmann::json const& doc )
{
  if ( !doc.is_object() || !doc.contains( "propositions" ) || !doc["propositions"].is_array() )
    throw parse_error( "JSON sample needs a 'propositions' array" );
  std::vector<std::string> names;
  for ( auto const& name : doc["propositions"] )
  {
    if ( !name.is_string() )
      throw parse_error( "proposition names must be strings" );
    names.push_back( name.get<std::string>() );
  }
  try
  {
    return proposition_set( std::move( names ) );
  }
  catch ( std::invalid_argument const& e )
  {
    throw parse_error( e.what() );
  }
}

nlohmann::json const& json_side( nlohmann::json const& doc, char const* key )
{
  static nlohmann::json const empty = nlohmann::json::array();
  if ( !doc.contains( key ) )
    return empty;
  if ( !doc[key].is_array() )
    throw parse_error( std::string( "'" ) + key + "' must be an array" );
  return doc[key];
}

} // namespace

parse_error::parse_error( std::string const& message, std::size_t line, std::size_t column )
    : std::runtime_error( line == 0u ? message
                                     : "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + message ),
      _line( line ),
      _column( column )
{
}

proposition_set::proposition_set( std::vector<std::string> names )
    : _names( std::move( names ) )
{
  if ( _names.empty() )
    throw std::invalid_argument( "the proposition set must not be empty" );
  if ( _names.size() > max_size )
    throw std::invalid_argument( "at most 64 propositions are supported" );
  std::set<std::string_view> seen;
  for ( auto const& name : _names )
  {
    if ( !is_identifier( name ) )
      throw std::invalid_argument( "invalid proposition name '" + name + "'" );
    if ( is_reserved( name ) )
      throw std::invalid_argument( "proposition name '" + name + "' is a reserved word" );
    if ( !seen.insert( name ).second )
      throw std::invalid_argument( "duplicate proposition '" + name + "'" );
  }
}

int proposition_set::index_of( std::string_view name ) const noexcept
{
  auto const it = std::find( _names.begin(), _names.end(), name );
  return it == _names.end() ? -1 : static_cast<int>( it - _names.begin() );
}

lasso_word::lasso_word( finite_word prefix, finite_word period )
    : _prefix( std::move( prefix ) ),
      _period( std::move( period ) )
{
  if ( _period.empty() )
    throw std::invalid_argument( "the period of a lasso word must be nonempty" );
}

symbol lasso_word::at( std::size_t j ) const noexcept
{
  auto const c = canonical_position( _prefix.size(), _period.size(), j );
  return c < _prefix.size() ? _prefix[c] : _period[c - _prefix.size()];
}

std::size_t canonical_position( std::size_t prefix_length, std::size_t period_length, std::size_t j )
{
  assert( period_length >= 1u );
  if ( j < prefix_length + period_length )
    return j;
  return prefix_length + ( j - prefix_length ) % period_length;
}

std::size_t suffix_successor( std::size_t prefix_length, std::size_t period_length, std::size_t i )
{
  if ( period_length == 0u || i >= prefix_length + period_length )
    throw std::out_of_range( "suffix_successor: position outside uv" );
  return i + 1u < prefix_length + period_length ? i + 1u : prefix_length;
}

finite_word unroll( lasso_word const& word, std::size_t copies )
{
  finite_word result = word.prefix();
  result.reserve( word.prefix_length() + copies * word.period_length() );
  for ( std::size_t c = 0u; c < copies; ++c )
    result.insert( result.end(), word.period().begin(), word.period().end() );
  return result;
}

lasso_word normalize( lasso_word const& word )
{
  auto period = word.period();
  /* primitive root: smallest divisor d of |v| with v = (v[0,d))^(|v|/d) */
  for ( std::size_t d = 1u; d <= period.size(); ++d )
  {
    if ( period.size() % d != 0u )
      continue;
    bool repeats = true;
    for ( std::size_t i = d; i < period.size() && repeats; ++i )
      repeats = period[i] == period[i - d];
    if ( repeats )
    {
      period.resize( d );
      break;
    }
  }
  auto prefix = word.prefix();
  while ( !prefix.empty() && prefix.back() == period.back() )
  {
    std::rotate( period.begin(), period.end() - 1, period.end() );
    prefix.pop_back();
  }
  return lasso_word( std::move( prefix ), std::move( period ) );
}

bool same_infinite_word( lasso_word const& a, lasso_word const& b )
{
  return normalize( a ) == normalize( b );
}

sample::sample( proposition_set propositions, std::vector<lasso_word> positives, std::vector<lasso_word> negatives )
    : _propositions( std::move( propositions ) ),
      _positives( deduplicate( std::move( positives ) ) ),
      _negatives( deduplicate( std::move( negatives ) ) )
{
  if ( _positives.empty() && _negatives.empty() )
    throw sample_error( "a sample needs at least one trace" );
  std::set<lasso_word> normal_positives;
  for ( auto const& w : _positives )
    normal_positives.insert( normalize( w ) );
  for ( auto const& w : _negatives )
    if ( normal_positives.count( normalize( w ) ) )
      throw sample_error( "trace " + format_lasso( w, _propositions.size() ) +
                          " occurs among both the positive and the negative traces" );
  auto const limit = std::uint64_t{ _propositions.size() >= 64u ? ~std::uint64_t{ 0u } : ( ( std::uint64_t{ 1u } << _propositions.size() ) - 1u ) };
  for ( auto const* side : { &_positives, &_negatives } )
    for ( auto const& w : *side )
      for ( auto const* part : { &w.prefix(), &w.period() } )
        for ( auto const a : *part )
          if ( ( a.bits & ~limit ) != 0u )
            throw sample_error( "symbol mentions a proposition outside the proposition set" );
}

finite_sample::finite_sample( proposition_set propositions, std::vector<finite_word> positives, std::vector<finite_word> negatives )
    : _propositions( std::move( propositions ) ),
      _positives( deduplicate( std::move( positives ) ) ),
      _negatives( deduplicate( std::move( negatives ) ) )
{
  if ( _positives.empty() && _negatives.empty() )
    throw sample_error( "a sample needs at least one word" );
  std::set<finite_word> const positive_set( _positives.begin(), _positives.end() );
  for ( auto const& w : _negatives )
    if ( positive_set.count( w ) )
      throw sample_error( "word '" + format_word( w, _propositions.size() ) +
                          "' occurs among both the positive and the negative words" );
}

sample_format detect_format( std::string_view text )
{
  auto const first = text.find_first_not_of( " \t\r\n" );
  return first != std::string_view::npos && text[first] == '{' ? sample_format::json : sample_format::text;
}

sample parse_sample( std::string_view text, sample_format format, parse_options const& options )
{
  std::vector<lasso_word> positives, negatives;
  std::optional<proposition_set> propositions;

  if ( format == sample_format::text )
  {
    auto const lines = split_lines( text );
    if ( lines.empty() )
      throw parse_error( "empty sample file", 1u, 1u );
    propositions = parse_header( lines.front() );
    auto const k = propositions->size();
    parse_text_body( lines, true, positives, negatives,
                     [k]( std::string_view line, std::size_t number ) { return parse_lasso_line( line, k, number ); } );
  }
  else
  {
    auto const doc = parse_json_document( text );
    propositions = json_propositions( doc );
    auto const k = propositions->size();
    auto const read = [k]( nlohmann::json const& side, std::vector<lasso_word>& out ) {
      for ( auto const& trace : side )
      {
        if ( !trace.is_object() || !trace.contains( "period" ) )
          throw parse_error( "JSON trace needs 'prefix' and 'period'" );
        auto prefix = trace.contains( "prefix" ) ? json_word( trace["prefix"], k ) : finite_word{};
        auto period = json_word( trace["period"], k );
        if ( period.empty() )
          throw parse_error( "the period of a trace must be nonempty" );
        out.emplace_back( std::move( prefix ), std::move( period ) );
      }
    };
    read( json_side( doc, "positive" ), positives );
    read( json_side( doc, "negative" ), negatives );
  }

  if ( options.normalize )
  {
    for ( auto* side : { &positives, &negatives } )
      for ( auto& w : *side )
        w = normalize( w );
  }
  return sample( std::move( *propositions ), std::move( positives ), std::move( negatives ) );
}

finite_sample parse_finite_sample( std::string_view text, sample_format format )
{
  std::vector<finite_word> positives, negatives;
  std::optional<proposition_set> propositions;

  if ( format == sample_format::text )
  {
    auto const lines = split_lines( text );
    if ( lines.empty() )
      throw parse_error( "empty sample file", 1u, 1u );
    propositions = parse_header( lines.front() );
    auto const k = propositions->size();
    parse_text_body( lines, false, positives, negatives, [k]( std::string_view line, std::size_t number ) {
      if ( line.find( "::" ) != std::string_view::npos )
        throw parse_error( "finite words must not contain '::'", number, line.find( "::" ) + 1u );
      return parse_symbols( line, k, { number, 0u } );
    } );
  }
  else
  {
    auto const doc = parse_json_document( text );
    propositions = json_propositions( doc );
    auto const k = propositions->size();
    for ( auto const& word : json_side( doc, "positive" ) )
      positives.push_back( json_word( word, k ) );
    for ( auto const& word : json_side( doc, "negative" ) )
      negatives.push_back( json_word( word, k ) );
  }
  return finite_sample( std::move( *propositions ), std::move( positives ), std::move( negatives ) );
}

std::string format_symbol( symbol a, std::size_t num_propositions )
{
  std::string bits( num_propositions, '0' );
  for ( std::size_t p = 0u; p < num_propositions; ++p )
    if ( a.has( p ) )
      bits[p] = '1';
  return bits;
}

std::string format_word( finite_word const& word, std::size_t num_propositions )
{
  std::string result;
  for ( std::size_t i = 0u; i < word.size(); ++i )
  {
    if ( i > 0u )
      result += ';';
    result += format_symbol( word[i], num_propositions );
  }
  return result;
}

std::string format_lasso( lasso_word const& word, std::size_t num_propositions )
{
  return format_word( word.prefix(), num_propositions ) + "::" + format_word( word.period(), num_propositions );
}

namespace
{

std::string header_line( proposition_set const& props )
{
  std::string line;
  for ( std::size_t p = 0u; p < props.size(); ++p )
  {
    if ( p > 0u )
      line += ',';
    line += props.name( p );
  }
  return line;
}

} // namespace

std::string serialize( sample const& s, sample_format format )
{
  auto const k = s.propositions().size();
  if ( format == sample_format::text )
  {
    std::ostringstream out;
    out << header_line( s.propositions() ) << '\n';
    for ( auto const& w : s.positives() )
      out << format_lasso( w, k ) << '\n';
    out << "---\n";
    for ( auto const& w : s.negatives() )
      out << format_lasso( w, k ) << '\n';
    return out.str();
  }
  nlohmann::json doc;
  doc["propositions"] = s.propositions().names();
  for ( auto const* key : { "positive", "negative" } )
  {
    auto const& side = std::string_view( key ) == "positive" ? s.positives() : s.negatives();
    auto traces = nlohmann::json::array();
    for ( auto const& w : side )
      traces.push_back( { { "prefix", json_of_word( w.prefix(), k ) }, { "period", json_of_word( w.period(), k ) } } );
    doc[key] = std::move( traces );
  }
  return doc.dump( 2 ) + "\n";
}

std::string serialize( finite_sample const& s, sample_format format )
{
  auto const k = s.propositions().size();
  if ( format == sample_format::text )
  {
    std::ostringstream out;
    out << header_line( s.propositions() ) << '\n';
    for ( auto const& w : s.positives() )
      out << format_word( w, k ) << '\n';
    out << "---\n";
    for ( auto const& w : s.negatives() )
      out << format_word( w, k ) << '\n';
    return out.str();
  }
  nlohmann::json doc;
  doc["propositions"] = s.propositions().names();
  auto positives = nlohmann::json::array();
  for ( auto const& w : s.positives() )
    positives.push_back( json_of_word( w, k ) );
  auto negatives = nlohmann::json::array();
  for ( auto const& w : s.negatives() )
    negatives.push_back( json_of_word( w, k ) );
  doc["positive"] = std::move( positives );
  doc["negative"] = std::move( negatives );
  return doc.dump( 2 ) + "\n";
}

} // namespace pslearn
