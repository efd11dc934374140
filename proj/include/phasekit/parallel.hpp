#pragma once

namespace phasekit {

// Selects the OpenMP kernel or the single-threaded reference loop. Both run
// identical per-element arithmetic, so results agree bit-for-bit.
enum class Exec { serial, parallel };

// Caps the number of OpenMP worker threads (n <= 0 restores the default).
void set_thread_cap(int n);
int thread_cap();

// Reads PHASEKIT_THREADS; returns false if set but not a positive integer.
bool apply_thread_env();

}  // namespace phasekit
