from django import dispatch

campaign_pre_launch = dispatch.Signal()
campaign_pre_launch.__doc__ = """Send before campaign main loop (campaign)."""

campaign_post_launch = dispatch.Signal()
campaign_post_launch.__doc__ = """Send after campaign main loop (campaign, summary)."""
