"""
Opportunistic access on chain channels
======================================

P^0 sends BCH words on its own band, and jumps into a vacant chain channel
whenever sensing says one is free.
"""

from pathlib import Path

from bchchain.interweave import format_metrics, load_config, run_simulation, write_event_log

cfg = load_config(Path(__file__).with_name("sim.cfg"), rng_seed=42)
metrics, events = run_simulation(cfg)
print(format_metrics(metrics))

# first few slots of the log
print("\n".join(write_event_log(events[:8]).splitlines()))

# perfect sensing never collides
clean = load_config(Path(__file__).with_name("sim.cfg"), rng_seed=42, sensing_miss=0.0)
print("collisions with perfect sensing:", run_simulation(clean)[0].collisions)

# with the whole N_j-bit word decoded, aliased errors slip through
full = load_config(Path(__file__).with_name("sim.cfg"), rng_seed=42, secondary_receiver="full")
print("word error rate, grid receiver:", metrics.secondary_word_error_rate)
print("word error rate, full receiver:", run_simulation(full)[0].secondary_word_error_rate)
