"""Program actions."""
