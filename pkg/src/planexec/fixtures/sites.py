"""Simulated site fixtures for the browser agent and sitemap mining."""

from __future__ import annotations

from ..browser.model import AxNode
from ..browser.sim import OverlaySpec, PageSpec, SitePlan


def make_shop_site(order_count: int = 5, popup: str | None = None) -> SitePlan:
    """Five-page demo shop. `popup` is None, "dismissable", or "undismissable";
    when set, the home page carries an overlay occluding its links."""
    origin = "https://shop.example"
    overlay = None
    home_nodes = [
        AxNode(1, "heading", "Demo Shop"),
        AxNode(2, "link", "Orders", bounds=(10, 40, 80, 20)),
        AxNode(3, "link", "Products", bounds=(10, 70, 80, 20)),
        AxNode(4, "link", "Profile", bounds=(10, 100, 80, 20)),
        AxNode(5, "link", "About", bounds=(10, 130, 80, 20)),
        AxNode(6, "textbox", "Search products", bounds=(120, 40, 200, 24)),
    ]
    if popup == "dismissable":
        home_nodes += [
            AxNode(90, "dialog", "Newsletter signup", bounds=(50, 50, 300, 200)),
            AxNode(91, "button", "Close", bounds=(330, 55, 16, 16)),
        ]
        overlay = OverlaySpec(dialog=90, close=91, dismissable=True)
    elif popup == "undismissable":
        home_nodes += [
            AxNode(90, "dialog", "Session expired", bounds=(50, 50, 300, 200)),
        ]
        overlay = OverlaySpec(dialog=90, close=None, dismissable=False)

    order_lines = "\n".join(
        f"- Order #o{i + 1}: ${10 + 5 * i:.2f}" for i in range(order_count)
    )
    pages = {
        "home": PageSpec(
            page_id="home",
            url=f"{origin}/",
            title="Demo Shop",
            nodes=tuple(home_nodes),
            markdown="# Demo Shop\n\nWelcome to the demo shop.",
            transitions={2: "orders", 3: "products", 4: "profile", 5: "about"},
            overlay=overlay,
        ),
        "orders": PageSpec(
            page_id="orders",
            url=f"{origin}/orders",
            title="Orders",
            nodes=(
                AxNode(10, "heading", "Orders"),
                AxNode(11, "link", "Home"),
                AxNode(12, "button", "Export orders"),
            ),
            markdown=f"# Orders\n\nOrders ({order_count})\n\n{order_lines}",
            transitions={11: "home"},
        ),
        "products": PageSpec(
            page_id="products",
            url=f"{origin}/products",
            title="Products",
            nodes=(
                AxNode(20, "heading", "Products"),
                AxNode(21, "link", "Home"),
                AxNode(22, "combobox", "Sort by"),
            ),
            markdown="# Products\n\n- Widget: $3.50\n- Gadget: $7.25",
            transitions={21: "home"},
        ),
        "profile": PageSpec(
            page_id="profile",
            url=f"{origin}/profile",
            title="Profile",
            nodes=(
                AxNode(30, "heading", "Profile"),
                AxNode(31, "link", "Home"),
                AxNode(32, "textbox", "Display name", value="alice"),
            ),
            markdown="# Profile\n\nSigned in as alice.",
            transitions={31: "home"},
        ),
        "about": PageSpec(
            page_id="about",
            url=f"{origin}/about",
            title="About",
            nodes=(
                AxNode(40, "heading", "About"),
                AxNode(41, "link", "Home"),
            ),
            markdown="# About\n\nA simulated storefront.",
            transitions={41: "home"},
        ),
    }
    return SitePlan(site_id="shop", origin=origin, entry="home", pages=pages)


def make_two_submit_site() -> SitePlan:
    """One page with two identically named buttons, for ambiguity tests."""
    origin = "https://forms.example"
    page = PageSpec(
        page_id="form",
        url=f"{origin}/form",
        title="Form",
        nodes=(
            AxNode(1, "heading", "Checkout"),
            AxNode(2, "button", "Submit"),
            AxNode(3, "button", "Submit"),
        ),
        markdown="# Checkout",
    )
    return SitePlan(site_id="forms", origin=origin, entry="form", pages={"form": page})
