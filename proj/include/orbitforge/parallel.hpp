#pragma once

#include <cstddef>
#include <functional>

namespace orbitforge
{

/*! \brief Worker count: the explicit setting, else ORBITFORGE_THREADS, else hardware concurrency. */
unsigned thread_count();

/*! \brief Overrides the worker count; 0 restores the default lookup. */
void set_thread_count( unsigned n );

/*! \brief Runs `fn( i )` for every i in [begin, end).
 *
 * Indices are split into contiguous chunks, one per worker. Callers write
 * results into per-index slots, so output does not depend on the worker count.
 */
void parallel_for( std::size_t begin, std::size_t end, std::function<void( std::size_t )> const& fn );

} // namespace orbitforge
