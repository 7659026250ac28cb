"""CausalPlan: lifted classical planning with a causal constraint model."""
