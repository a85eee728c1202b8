#include <orbitforge/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace orbitforge
{

namespace
{
std::atomic<unsigned> explicit_threads{ 0 };
}

unsigned thread_count()
{
  if ( auto const n = explicit_threads.load(); n > 0 )
  {
    return n;
  }
  if ( char const* env = std::getenv( "ORBITFORGE_THREADS" ) )
  {
    try
    {
      auto const v = std::stoul( env );
      if ( v > 0 )
      {
        return static_cast<unsigned>( v );
      }
    }
    catch ( std::exception const& )
    {
    }
  }
  return std::max( 1u, std::thread::hardware_concurrency() );
}

void set_thread_count( unsigned n )
{
  explicit_threads.store( n );
}

void parallel_for( std::size_t begin, std::size_t end, std::function<void( std::size_t )> const& fn )
{
  if ( end <= begin )
  {
    return;
  }
  auto const total = end - begin;
  auto const workers = std::min<std::size_t>( thread_count(), total );
  if ( workers <= 1 )
  {
    for ( auto i = begin; i < end; ++i )
    {
      fn( i );
    }
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve( workers );
  auto const chunk = ( total + workers - 1 ) / workers;
  for ( std::size_t w = 0; w < workers; ++w )
  {
    auto const lo = begin + w * chunk;
    auto const hi = std::min( end, lo + chunk );
    if ( lo >= hi )
    {
      break;
    }
    pool.emplace_back( [&, lo, hi] {
      try
      {
        for ( auto i = lo; i < hi; ++i )
        {
          fn( i );
        }
      }
      catch ( ... )
      {
        std::lock_guard lock( error_mutex );
        if ( !error )
        {
          error = std::current_exception();
        }
      }
    } );
  }
  for ( auto& t : pool )
  {
    t.join();
  }
  if ( error )
  {
    std::rethrow_exception( error );
  }
}

} // namespace orbitforge
