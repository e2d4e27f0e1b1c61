#include <pslearn/formula.hpp>

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace pslearn
{

namespace detail
{

enum type_flags : std::uint8_t
{
  atomic_type = 1u,
  regex_type = 2u,
  psl_type = 4u,
  core_term = 8u,
  ltl_term = 16u,
};

struct formula_node
{
  op kind;
  std::string name;
  formula_node const* left;
  formula_node const* right;
  std::uint8_t flags;
  std::size_t hash;
};

} // namespace detail

namespace
{

using detail::formula_node;

std::size_t combine( std::size_t seed, std::size_t value )
{
  return seed ^ ( value + 0x9e3779b97f4a7c15ull + ( seed << 6 ) + ( seed >> 2 ) );
}

std::size_t node_hash( op kind, std::string const& name, formula_node const* left, formula_node const* right )
{
  auto h = std::hash<std::uint8_t>{}( static_cast<std::uint8_t>( kind ) );
  h = combine( h, std::hash<std::string>{}( name ) );
  h = combine( h, left ? left->hash : 0u );
  h = combine( h, right ? right->hash : 0u );
  return h;
}

struct node_key_hash
{
  std::size_t operator()( formula_node const* n ) const noexcept { return n->hash; }
};

struct node_key_equal
{
  bool operator()( formula_node const* a, formula_node const* b ) const noexcept
  {
    return a->kind == b->kind && a->left == b->left && a->right == b->right && a->name == b->name;
  }
};

/* Process-wide hash-consing table; nodes live as long as the process. */
class interner
{
public:
  static interner& instance()
  {
    static interner table;
    return table;
  }

  formula_node const* intern( formula_node candidate )
  {
    std::lock_guard lock( _mutex );
    auto const it = _index.find( &candidate );
    if ( it != _index.end() )
      return *it;
    auto const* stored = &_nodes.emplace_back( std::move( candidate ) );
    _index.insert( stored );
    return stored;
  }

private:
  std::mutex _mutex;
  std::deque<formula_node> _nodes;
  std::unordered_set<formula_node const*, node_key_hash, node_key_equal> _index;
};

std::uint8_t compute_flags( op kind, formula_node const* a, formula_node const* b )
{
  using namespace detail;
  auto const has = []( formula_node const* n, std::uint8_t f ) { return ( n->flags & f ) != 0u; };
  std::uint8_t type = 0u;
  switch ( kind )
  {
  case op::prop:
  case op::tt:
  case op::ff:
    type = atomic_type | regex_type | psl_type;
    break;
  case op::eps:
    type = regex_type;
    break;
  case op::neg:
    if ( has( a, atomic_type ) )
      type = atomic_type | regex_type | psl_type;
    else if ( has( a, psl_type ) )
      type = psl_type;
    else
      throw type_error( "negation of a regular expression that is not atomic" );
    break;
  case op::disj:
  case op::conj:
  case op::implies:
  case op::iff:
    if ( has( a, atomic_type ) && has( b, atomic_type ) )
      type = atomic_type | regex_type | psl_type;
    else if ( has( a, psl_type ) && has( b, psl_type ) )
      type = psl_type;
    else
      throw type_error( std::string( "operands of '" ) + op_name( kind ) + "' must both be formulas or both be atomic expressions" );
    break;
  case op::choice:
  case op::concat:
    if ( !has( a, regex_type ) || !has( b, regex_type ) )
      throw type_error( std::string( "operands of '" ) + op_name( kind ) + "' must be regular expressions" );
    type = regex_type;
    break;
  case op::star:
    if ( !has( a, regex_type ) )
      throw type_error( "operand of '*' must be a regular expression" );
    type = regex_type;
    break;
  case op::next:
  case op::finally:
  case op::globally:
    if ( !has( a, psl_type ) )
      throw type_error( std::string( "operand of '" ) + op_name( kind ) + "' must be a formula" );
    type = psl_type;
    break;
  case op::until:
    if ( !has( a, psl_type ) || !has( b, psl_type ) )
      throw type_error( "operands of 'U' must be formulas" );
    type = psl_type;
    break;
  case op::triggers:
    if ( !has( a, regex_type ) )
      throw type_error( "left side of '|->' must be a regular expression" );
    if ( !has( b, psl_type ) )
      throw type_error( "right side of '|->' must be a formula" );
    type = psl_type;
    break;
  }

  bool core = is_core( kind );
  bool ltl = kind == op::prop || kind == op::neg || kind == op::disj || kind == op::next || kind == op::until;
  for ( auto const* child : { a, b } )
  {
    if ( child )
    {
      core = core && has( child, core_term );
      ltl = ltl && has( child, ltl_term );
    }
  }
  std::uint8_t const extra = static_cast<std::uint8_t>( ( core ? detail::core_term : 0 ) | ( ltl ? detail::ltl_term : 0 ) );
  return static_cast<std::uint8_t>( type | extra );
}

formula_node const* make_node( op kind, std::string name, formula_node const* a, formula_node const* b )
{
  auto const flags = compute_flags( kind, a, b );
  auto const h = node_hash( kind, name, a, b );
  return interner::instance().intern( formula_node{ kind, std::move( name ), a, b, flags, h } );
}

} // namespace

std::size_t arity( op o ) noexcept
{
  switch ( o )
  {
  case op::prop:
  case op::eps:
  case op::tt:
  case op::ff:
    return 0u;
  case op::neg:
  case op::star:
  case op::next:
  case op::finally:
  case op::globally:
    return 1u;
  default:
    return 2u;
  }
}

bool is_core( op o ) noexcept
{
  return static_cast<std::uint8_t>( o ) <= static_cast<std::uint8_t>( op::triggers );
}

char const* op_name( op o ) noexcept
{
  switch ( o )
  {
  case op::prop: return "prop";
  case op::eps: return "eps";
  case op::neg: return "!";
  case op::disj: return "|";
  case op::choice: return "+";
  case op::concat: return ".";
  case op::star: return "*";
  case op::next: return "X";
  case op::until: return "U";
  case op::triggers: return "|->";
  case op::tt: return "true";
  case op::ff: return "false";
  case op::conj: return "&";
  case op::implies: return "->";
  case op::iff: return "<->";
  case op::finally: return "F";
  case op::globally: return "G";
  }
  return "?";
}

formula formula::prop( std::string name ) { return formula( make_node( op::prop, std::move( name ), nullptr, nullptr ) ); }
formula formula::eps() { return formula( make_node( op::eps, {}, nullptr, nullptr ) ); }
formula formula::tt() { return formula( make_node( op::tt, {}, nullptr, nullptr ) ); }
formula formula::ff() { return formula( make_node( op::ff, {}, nullptr, nullptr ) ); }
formula formula::neg( formula const& a ) { return formula( make_node( op::neg, {}, a._node, nullptr ) ); }
formula formula::disj( formula const& a, formula const& b ) { return formula( make_node( op::disj, {}, a._node, b._node ) ); }
formula formula::conj( formula const& a, formula const& b ) { return formula( make_node( op::conj, {}, a._node, b._node ) ); }
formula formula::implies( formula const& a, formula const& b ) { return formula( make_node( op::implies, {}, a._node, b._node ) ); }
formula formula::iff( formula const& a, formula const& b ) { return formula( make_node( op::iff, {}, a._node, b._node ) ); }
formula formula::choice( formula const& a, formula const& b ) { return formula( make_node( op::choice, {}, a._node, b._node ) ); }
formula formula::concat( formula const& a, formula const& b ) { return formula( make_node( op::concat, {}, a._node, b._node ) ); }
formula formula::star( formula const& a ) { return formula( make_node( op::star, {}, a._node, nullptr ) ); }
formula formula::next( formula const& a ) { return formula( make_node( op::next, {}, a._node, nullptr ) ); }
formula formula::until( formula const& a, formula const& b ) { return formula( make_node( op::until, {}, a._node, b._node ) ); }
formula formula::triggers( formula const& a, formula const& b ) { return formula( make_node( op::triggers, {}, a._node, b._node ) ); }
formula formula::finally( formula const& a ) { return formula( make_node( op::finally, {}, a._node, nullptr ) ); }
formula formula::globally( formula const& a ) { return formula( make_node( op::globally, {}, a._node, nullptr ) ); }

formula formula::make( op o, formula const* left, formula const* right, std::string name )
{
  auto const n = arity( o );
  if ( ( n >= 1u && !left ) || ( n == 2u && !right ) )
    throw std::invalid_argument( "formula::make: missing operand" );
  return formula( make_node( o, o == op::prop ? std::move( name ) : std::string{},
                             n >= 1u ? left->_node : nullptr, n == 2u ? right->_node : nullptr ) );
}

op formula::kind() const noexcept { return _node->kind; }
std::string const& formula::name() const noexcept { return _node->name; }
formula formula::left() const noexcept { return formula( _node->left ); }
formula formula::right() const noexcept { return formula( _node->right ); }
bool formula::is_atomic() const noexcept { return _node->flags & detail::atomic_type; }
bool formula::is_regex() const noexcept { return _node->flags & detail::regex_type; }
bool formula::is_psl() const noexcept { return _node->flags & detail::psl_type; }
bool formula::is_core() const noexcept { return _node->flags & detail::core_term; }
bool formula::is_ltl() const noexcept { return _node->flags & detail::ltl_term; }
std::size_t formula::hash() const noexcept { return _node->hash; }

std::vector<formula> subterms( formula const& f )
{
  std::vector<formula> order;
  std::unordered_set<formula> visited;
  std::vector<std::pair<formula, bool>> stack{ { f, false } };
  while ( !stack.empty() )
  {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if ( expanded )
    {
      order.push_back( g );
      continue;
    }
    if ( visited.count( g ) )
      continue;
    visited.insert( g );
    stack.emplace_back( g, true );
    auto const n = arity( g.kind() );
    if ( n == 2u )
      stack.emplace_back( g.right(), false );
    if ( n >= 1u )
      stack.emplace_back( g.left(), false );
  }
  return order;
}

std::size_t size( formula const& f )
{
  return subterms( f ).size();
}

std::vector<std::string> propositions_of( formula const& f )
{
  std::vector<std::string> names;
  for ( auto const& g : subterms( f ) )
    if ( g.kind() == op::prop && std::find( names.begin(), names.end(), g.name() ) == names.end() )
      names.push_back( g.name() );
  return names;
}

/* parsing */

namespace
{

enum class token_kind
{
  identifier,
  kw_true,
  kw_false,
  kw_eps,
  kw_next,
  kw_finally,
  kw_globally,
  kw_until,
  bang,
  amp,
  bar,
  arrow,
  double_arrow,
  triggers_arrow,
  plus,
  dot,
  asterisk,
  lparen,
  rparen,
  lbrace,
  rbrace,
  end
};

struct token
{
  token_kind kind;
  std::string text;
  std::size_t column;
};

std::vector<token> tokenize( std::string_view text )
{
  std::vector<token> tokens;
  std::size_t i = 0u;
  auto const ident_start = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || c == '_'; };
  auto const ident_char = [&]( char c ) { return ident_start( c ) || ( c >= '0' && c <= '9' ); };
  while ( i < text.size() )
  {
    char const c = text[i];
    std::size_t const column = i + 1u;
    if ( c == ' ' || c == '\t' || c == '\n' || c == '\r' )
    {
      ++i;
      continue;
    }
    if ( ident_start( c ) )
    {
      std::size_t j = i;
      while ( j < text.size() && ident_char( text[j] ) )
        ++j;
      std::string word( text.substr( i, j - i ) );
      auto kind = token_kind::identifier;
      if ( word == "true" || word == "tt" )
        kind = token_kind::kw_true;
      else if ( word == "false" || word == "ff" )
        kind = token_kind::kw_false;
      else if ( word == "eps" )
        kind = token_kind::kw_eps;
      else if ( word == "X" )
        kind = token_kind::kw_next;
      else if ( word == "F" )
        kind = token_kind::kw_finally;
      else if ( word == "G" )
        kind = token_kind::kw_globally;
      else if ( word == "U" )
        kind = token_kind::kw_until;
      tokens.push_back( { kind, std::move( word ), column } );
      i = j;
      continue;
    }
    auto const starts = [&]( std::string_view s ) { return text.substr( i, s.size() ) == s; };
    if ( starts( "|->" ) )
    {
      tokens.push_back( { token_kind::triggers_arrow, "|->", column } );
      i += 3u;
    }
    else if ( starts( "<->" ) )
    {
      tokens.push_back( { token_kind::double_arrow, "<->", column } );
      i += 3u;
    }
    else if ( starts( "->" ) )
    {
      tokens.push_back( { token_kind::arrow, "->", column } );
      i += 2u;
    }
    else
    {
      token_kind kind;
      switch ( c )
      {
      case '!': kind = token_kind::bang; break;
      case '&': kind = token_kind::amp; break;
      case '|': kind = token_kind::bar; break;
      case '+': kind = token_kind::plus; break;
      case '.': kind = token_kind::dot; break;
      case '*': kind = token_kind::asterisk; break;
      case '(': kind = token_kind::lparen; break;
      case ')': kind = token_kind::rparen; break;
      case '{': kind = token_kind::lbrace; break;
      case '}': kind = token_kind::rbrace; break;
      default:
        throw parse_error( std::string( "unexpected character '" ) + c + "'", 1u, column );
      }
      tokens.push_back( { kind, std::string( 1u, c ), column } );
      ++i;
    }
  }
  tokens.push_back( { token_kind::end, "", text.size() + 1u } );
  return tokens;
}

class formula_parser
{
public:
  explicit formula_parser( std::string_view text ) : _tokens( tokenize( text ) ) {}

  formula parse()
  {
    auto f = parse_triggers();
    if ( peek().kind != token_kind::end )
      fail( "unexpected '" + peek().text + "'" );
    return f;
  }

private:
  token const& peek() const { return _tokens[_pos]; }
  token const& advance() { return _tokens[_pos++]; }
  bool accept( token_kind kind )
  {
    if ( peek().kind != kind )
      return false;
    ++_pos;
    return true;
  }
  [[noreturn]] void fail( std::string const& message ) const { throw parse_error( message, 1u, peek().column ); }
  void expect( token_kind kind, char const* what )
  {
    if ( !accept( kind ) )
      fail( std::string( "expected " ) + what );
  }

  template<typename Build>
  formula typed( std::size_t column, Build&& build )
  {
    try
    {
      return build();
    }
    catch ( type_error const& e )
    {
      throw type_error( "column " + std::to_string( column ) + ": " + e.what() );
    }
  }

  formula parse_triggers()
  {
    if ( peek().kind == token_kind::lbrace )
    {
      auto const column = advance().column;
      auto lhs = parse_triggers();
      expect( token_kind::rbrace, "'}'" );
      expect( token_kind::triggers_arrow, "'|->' after '{...}'" );
      auto rhs = parse_triggers();
      return typed( column, [&] { return formula::triggers( lhs, rhs ); } );
    }
    return parse_iff();
  }

  formula parse_iff()
  {
    auto lhs = parse_implies();
    while ( peek().kind == token_kind::double_arrow )
    {
      auto const column = advance().column;
      auto rhs = parse_implies();
      lhs = typed( column, [&] { return formula::iff( lhs, rhs ); } );
    }
    return lhs;
  }

  formula parse_implies()
  {
    auto lhs = parse_until();
    if ( peek().kind == token_kind::arrow )
    {
      auto const column = advance().column;
      auto rhs = parse_implies();
      return typed( column, [&] { return formula::implies( lhs, rhs ); } );
    }
    return lhs;
  }

  formula parse_until()
  {
    auto lhs = parse_binary_left( 0u );
    if ( peek().kind == token_kind::kw_until )
    {
      auto const column = advance().column;
      auto rhs = parse_until();
      return typed( column, [&] { return formula::until( lhs, rhs ); } );
    }
    return lhs;
  }

  /* left-associative levels: | & + . (loosest first) */
  formula parse_binary_left( std::size_t level )
  {
    static constexpr token_kind tokens[] = { token_kind::bar, token_kind::amp, token_kind::plus, token_kind::dot };
    static constexpr op ops[] = { op::disj, op::conj, op::choice, op::concat };
    if ( level == std::size( tokens ) )
      return parse_unary();
    auto lhs = parse_binary_left( level + 1u );
    while ( peek().kind == tokens[level] )
    {
      auto const column = advance().column;
      auto rhs = parse_binary_left( level + 1u );
      lhs = typed( column, [&] { return formula::make( ops[level], &lhs, &rhs ); } );
    }
    return lhs;
  }

  formula parse_unary()
  {
    auto const kind = peek().kind;
    std::optional<op> prefix;
    if ( kind == token_kind::bang )
      prefix = op::neg;
    else if ( kind == token_kind::kw_next )
      prefix = op::next;
    else if ( kind == token_kind::kw_finally )
      prefix = op::finally;
    else if ( kind == token_kind::kw_globally )
      prefix = op::globally;
    if ( prefix )
    {
      auto const column = advance().column;
      auto operand = parse_unary();
      return typed( column, [&] { return formula::make( *prefix, &operand, nullptr ); } );
    }
    auto f = parse_primary();
    while ( peek().kind == token_kind::asterisk )
    {
      auto const column = advance().column;
      f = typed( column, [&] { return formula::star( f ); } );
    }
    return f;
  }

  formula parse_primary()
  {
    auto const& t = peek();
    switch ( t.kind )
    {
    case token_kind::identifier:
      return formula::prop( advance().text );
    case token_kind::kw_true:
      advance();
      return formula::tt();
    case token_kind::kw_false:
      advance();
      return formula::ff();
    case token_kind::kw_eps:
      advance();
      return formula::eps();
    case token_kind::lparen:
    {
      advance();
      auto f = parse_triggers();
      expect( token_kind::rparen, "')'" );
      return f;
    }
    case token_kind::end:
      fail( "unexpected end of input" );
    default:
      fail( "unexpected '" + t.text + "'" );
    }
  }

  std::vector<token> _tokens;
  std::size_t _pos = 0u;
};

/* printing */

constexpr int level_triggers = 1;
constexpr int level_atom = 10;
constexpr int level_unary = 9;

int level_of( op o )
{
  switch ( o )
  {
  case op::triggers: return level_triggers;
  case op::iff: return 2;
  case op::implies: return 3;
  case op::until: return 4;
  case op::disj: return 5;
  case op::conj: return 6;
  case op::choice: return 7;
  case op::concat: return 8;
  case op::neg:
  case op::next:
  case op::finally:
  case op::globally:
  case op::star:
    return level_unary;
  default:
    return level_atom;
  }
}

bool right_associative( op o )
{
  return o == op::implies || o == op::until;
}

void print( formula const& f, std::string& out );

void print_child( formula const& child, bool parens, std::string& out )
{
  if ( parens )
    out += '(';
  print( child, out );
  if ( parens )
    out += ')';
}

void print( formula const& f, std::string& out )
{
  auto const kind = f.kind();
  auto const level = level_of( kind );
  switch ( kind )
  {
  case op::prop:
    out += f.name();
    return;
  case op::eps:
  case op::tt:
  case op::ff:
    out += op_name( kind );
    return;
  case op::neg:
  case op::next:
  case op::finally:
  case op::globally:
    out += op_name( kind );
    if ( kind != op::neg )
      out += ' ';
    print_child( f.left(), level_of( f.left().kind() ) < level_unary, out );
    return;
  case op::star:
  {
    auto const child = f.left().kind();
    print_child( f.left(), level_of( child ) < level_unary || ( level_of( child ) == level_unary && child != op::star ), out );
    out += '*';
    return;
  }
  case op::triggers:
    out += '{';
    print( f.left(), out );
    out += "} |-> ";
    print( f.right(), out );
    return;
  default:
    break;
  }
  auto const left_level = level_of( f.left().kind() );
  auto const right_level = level_of( f.right().kind() );
  bool const right_assoc = right_associative( kind );
  print_child( f.left(), right_assoc ? left_level <= level : left_level < level, out );
  if ( kind == op::concat )
    out += " . ";
  else
  {
    out += ' ';
    out += op_name( kind );
    out += ' ';
  }
  print_child( f.right(), right_assoc ? right_level < level : right_level <= level, out );
}

} // namespace

formula parse_formula( std::string_view text )
{
  return formula_parser( text ).parse();
}

std::string to_string( formula const& f )
{
  std::string out;
  print( f, out );
  return out;
}

formula expand_derived( formula const& f, std::string const& anchor )
{
  std::unordered_map<formula, formula> memo;
  auto const p = formula::prop( anchor );
  auto const tt = formula::disj( p, formula::neg( p ) );
  for ( auto const& g : subterms( f ) )
  {
    auto const child = [&]( formula const& c ) { return memo.at( c ); };
    auto const a = arity( g.kind() ) >= 1u ? std::optional<formula>( child( g.left() ) ) : std::nullopt;
    auto const b = arity( g.kind() ) == 2u ? std::optional<formula>( child( g.right() ) ) : std::nullopt;
    formula result = g;
    switch ( g.kind() )
    {
    case op::tt:
      result = tt;
      break;
    case op::ff:
      result = formula::neg( tt );
      break;
    case op::conj:
      result = formula::neg( formula::disj( formula::neg( *a ), formula::neg( *b ) ) );
      break;
    case op::implies:
      result = formula::disj( formula::neg( *a ), *b );
      break;
    case op::iff:
    {
      auto const both = formula::neg( formula::disj( formula::neg( *a ), formula::neg( *b ) ) );
      auto const neither = formula::neg( formula::disj( *a, *b ) );
      result = formula::disj( both, neither );
      break;
    }
    case op::finally:
      result = formula::until( tt, *a );
      break;
    case op::globally:
      result = formula::neg( formula::until( tt, formula::neg( *a ) ) );
      break;
    default:
      if ( arity( g.kind() ) > 0u )
        result = formula::make( g.kind(), &*a, b ? &*b : nullptr );
      break;
    }
    memo.emplace( g, result );
  }
  return memo.at( f );
}

/* syntax DAGs */

std::vector<label> core_labels( std::size_t num_propositions )
{
  std::vector<label> labels;
  for ( auto o : { op::eps, op::neg, op::disj, op::choice, op::concat, op::star, op::next, op::until, op::triggers } )
    labels.push_back( { o, -1 } );
  for ( std::size_t p = 0u; p < num_propositions; ++p )
    labels.push_back( { op::prop, static_cast<int>( p ) } );
  return labels;
}

std::size_t label_index( label l, std::size_t num_propositions ) noexcept
{
  (void)num_propositions;
  switch ( l.kind )
  {
  case op::eps: return 0u;
  case op::neg: return 1u;
  case op::disj: return 2u;
  case op::choice: return 3u;
  case op::concat: return 4u;
  case op::star: return 5u;
  case op::next: return 6u;
  case op::until: return 7u;
  case op::triggers: return 8u;
  default: return 9u + static_cast<std::size_t>( l.proposition );
  }
}

bool is_regex_label( label l ) noexcept
{
  switch ( l.kind )
  {
  case op::eps:
  case op::prop:
  case op::neg:
  case op::disj:
  case op::choice:
  case op::concat:
  case op::star:
    return true;
  default:
    return false;
  }
}

bool is_psl_label( label l ) noexcept
{
  switch ( l.kind )
  {
  case op::prop:
  case op::neg:
  case op::disj:
  case op::next:
  case op::until:
  case op::triggers:
    return true;
  default:
    return false;
  }
}

bool is_atomic_label( label l ) noexcept
{
  return l.kind == op::prop || l.kind == op::neg || l.kind == op::disj;
}

indexed_dag index_formula( formula const& f, proposition_set const& props, bool all_regex )
{
  if ( !f.is_core() )
    throw std::invalid_argument( "index_formula: expand derived operators first" );
  auto const order = subterms( f );

  std::unordered_set<formula> regex_context;
  if ( all_regex )
    regex_context.insert( order.begin(), order.end() );
  else
    for ( auto const& g : order )
      if ( g.kind() == op::triggers )
        for ( auto const& h : subterms( g.left() ) )
          regex_context.insert( h );

  std::vector<formula> indexed;
  for ( auto const& g : order )
    if ( regex_context.count( g ) )
      indexed.push_back( g );
  for ( auto const& g : order )
    if ( !regex_context.count( g ) )
      indexed.push_back( g );

  std::unordered_map<formula, int> id;
  indexed_dag result;
  result.regex_nodes = static_cast<int>( regex_context.size() );
  result.dag.nodes.resize( indexed.size() + 1u );
  for ( std::size_t k = 0u; k < indexed.size(); ++k )
  {
    auto const& g = indexed[k];
    id.emplace( g, static_cast<int>( k + 1u ) );
    auto& node = result.dag.nodes[k + 1u];
    node.lbl.kind = g.kind();
    if ( g.kind() == op::prop )
    {
      node.lbl.proposition = props.index_of( g.name() );
      if ( node.lbl.proposition < 0 )
        throw std::invalid_argument( "unknown proposition '" + g.name() + "'" );
    }
    if ( arity( g.kind() ) >= 1u )
      node.left = id.at( g.left() );
    if ( arity( g.kind() ) == 2u )
      node.right = id.at( g.right() );
  }
  return result;
}

structure_assignment structure_assignment::empty( int n, std::size_t num_labels )
{
  structure_assignment a;
  a.n = n;
  a.labels.assign( n + 1, std::vector<bool>( num_labels, false ) );
  a.left.resize( n + 1 );
  a.right.resize( n + 1 );
  for ( int k = 1; k <= n; ++k )
  {
    a.left[k].assign( k, false );
    a.right[k].assign( k, false );
  }
  return a;
}

syntax_dag decode_dag( structure_assignment const& assignment, proposition_set const& props )
{
  auto const labels = core_labels( props.size() );
  syntax_dag dag;
  dag.nodes.resize( assignment.n + 1 );
  for ( int k = 1; k <= assignment.n; ++k )
  {
    auto const& row = assignment.labels.at( k );
    auto const count = std::count( row.begin(), row.end(), true );
    if ( count != 1 )
      throw decode_error( "node " + std::to_string( k ) + " carries " + std::to_string( count ) + " labels" );
    auto const index = static_cast<std::size_t>( std::find( row.begin(), row.end(), true ) - row.begin() );
    auto& node = dag.nodes[k];
    node.lbl = labels.at( index );
    auto const children = arity( node.lbl.kind );
    if ( children > 0u && k == 1 )
      throw decode_error( "node 1 must be a leaf" );
    auto const child_of = [&]( std::vector<bool> const& slots, char const* side ) {
      int chosen = 0;
      for ( int l = 1; l < k; ++l )
      {
        if ( slots.at( l ) )
        {
          if ( chosen != 0 )
            throw decode_error( "node " + std::to_string( k ) + " has several " + side + " children" );
          chosen = l;
        }
      }
      if ( chosen == 0 )
        throw decode_error( "node " + std::to_string( k ) + " has no " + side + " child" );
      return chosen;
    };
    if ( k >= 2 )
    {
      auto const l = child_of( assignment.left.at( k ), "left" );
      auto const r = child_of( assignment.right.at( k ), "right" );
      if ( children >= 1u )
        node.left = l;
      if ( children == 2u )
        node.right = r;
    }
  }
  return dag;
}

formula dag_to_formula( syntax_dag const& dag, proposition_set const& props )
{
  auto const n = dag.size();
  if ( n < 1 )
    throw decode_error( "empty syntax DAG" );
  std::vector<bool> reachable( n + 1, false );
  reachable[n] = true;
  for ( int k = n; k >= 1; --k )
  {
    if ( !reachable[k] )
      continue;
    auto const& node = dag.nodes[k];
    auto const children = arity( node.lbl.kind );
    for ( int c : { children >= 1u ? node.left : 0, children == 2u ? node.right : 0 } )
    {
      if ( c == 0 )
        continue;
      if ( c >= k )
        throw decode_error( "child ids must be smaller than their parent's" );
      reachable[c] = true;
    }
  }
  std::vector<std::optional<formula>> built( n + 1 );
  for ( int k = 1; k <= n; ++k )
  {
    if ( !reachable[k] )
      continue;
    auto const& node = dag.nodes[k];
    try
    {
      if ( node.lbl.kind == op::prop )
      {
        if ( node.lbl.proposition < 0 || static_cast<std::size_t>( node.lbl.proposition ) >= props.size() )
          throw decode_error( "proposition index out of range" );
        built[k] = formula::prop( props.name( node.lbl.proposition ) );
        continue;
      }
      auto const children = arity( node.lbl.kind );
      auto const* left = children >= 1u ? &*built.at( node.left ) : nullptr;
      auto const* right = children == 2u ? &*built.at( node.right ) : nullptr;
      built[k] = formula::make( node.lbl.kind, left, right );
    }
    catch ( type_error const& e )
    {
      throw decode_error( "node " + std::to_string( k ) + ": " + e.what() );
    }
  }
  return *built[n];
}

formula decode( structure_assignment const& assignment, proposition_set const& props, bool formula_root )
{
  auto const f = dag_to_formula( decode_dag( assignment, props ), props );
  if ( formula_root && !f.is_psl() )
    throw decode_error( "the root of the decoded DAG is not a formula: " + to_string( f ) );
  return f;
}

structure_assignment assignment_of( syntax_dag const& dag, std::size_t num_propositions )
{
  auto const n = dag.size();
  auto a = structure_assignment::empty( n, core_labels( num_propositions ).size() );
  for ( int k = 1; k <= n; ++k )
  {
    auto const& node = dag.nodes[k];
    a.labels[k][label_index( node.lbl, num_propositions )] = true;
    if ( k >= 2 )
    {
      a.left[k][node.left > 0 ? node.left : 1] = true;
      a.right[k][node.right > 0 ? node.right : 1] = true;
    }
  }
  return a;
}

} // namespace pslearn
