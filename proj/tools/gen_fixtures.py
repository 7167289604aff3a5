#!/usr/bin/env python3
"""Writes the fixture suite under data/: UI dumps, snapshot graphs, tasks, plans, corpus."""

import json
import os
import sys
from xml.sax.saxutils import quoteattr

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

W, H = 1080, 2400

LAUNCHER = "com.android.launcher3"
CONTACTS = "com.android.contacts"
GMAIL = "com.google.android.gm"
CALENDAR = "com.google.android.calendar"
WEATHER = "com.example.weather"

APPS = [
    {"package": CONTACTS, "name": "Contacts"},
    {"package": GMAIL, "name": "Gmail"},
    {"package": CALENDAR, "name": "Calendar"},
    {"package": WEATHER, "name": "Weather"},
]
LAUNCH_STATE = {CONTACTS: "contacts_list", GMAIL: "gmail_inbox", CALENDAR: "calendar_home", WEATHER: "weather_home"}


class Node:
    def __init__(self, cls, text="", desc="", rid="", key=None, clickable=False, long_clickable=False,
                 checkable=False, checked=False, scrollable=False, focusable=None, visible=True,
                 bounds=None, children=None):
        self.cls = cls if "." in cls else ("android.widget." + cls)
        self.text, self.desc, self.rid, self.key = text, desc, rid, key
        self.clickable, self.long_clickable = clickable, long_clickable
        self.checkable, self.checked, self.scrollable = checkable, checked, scrollable
        self.focusable = clickable or "EditText" in self.cls if focusable is None else focusable
        self.visible = visible
        self.bounds = bounds
        self.children = children or []


def V(cls, *children, **kw):
    return Node(cls, children=list(children), **kw)


def layout_bounds(node, box):
    if node.bounds is None:
        node.bounds = box
    l, t, r, b = node.bounds
    if not node.children:
        return
    step = max(1, (b - t) // len(node.children))
    for i, c in enumerate(node.children):
        layout_bounds(c, (l, t + i * step, r, min(b, t + (i + 1) * step)))


def xml_of(root_nodes, package):
    lines = ["<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>", '<hierarchy rotation="0">']

    def emit(node, index, depth):
        ind = "  " * depth
        l, t, r, b = node.bounds
        at = [
            ("index", str(index)), ("text", node.text), ("resource-id", node.rid), ("class", node.cls),
            ("package", package), ("content-desc", node.desc),
            ("checkable", node.checkable), ("checked", node.checked), ("clickable", node.clickable),
            ("enabled", True), ("focusable", node.focusable), ("focused", False),
            ("scrollable", node.scrollable), ("long-clickable", node.long_clickable), ("password", False),
            ("selected", False), ("visible-to-user", node.visible), ("bounds", "[%d,%d][%d,%d]" % (l, t, r, b)),
        ]
        attrs = " ".join("%s=%s" % (k, quoteattr(("true" if v else "false") if isinstance(v, bool) else v))
                         for k, v in at)
        if node.children:
            lines.append("%s<node %s>" % (ind, attrs))
            for i, c in enumerate(node.children):
                emit(c, i, depth + 1)
            lines.append("%s</node>" % ind)
        else:
            lines.append("%s<node %s />" % (ind, attrs))

    for i, n in enumerate(root_nodes):
        emit(n, i, 1)
    lines.append("</hierarchy>")
    return "\n".join(lines) + "\n"


def key_paths(root_nodes):
    out = {}

    def walk(node, path):
        if node.key:
            if node.key in out:
                raise SystemExit("duplicate key " + node.key)
            out[node.key] = path
        seen = {}
        for c in node.children:
            seen[c.cls] = seen.get(c.cls, 0) + 1
            walk(c, "%s/%s[%d]" % (path, c.cls, seen[c.cls]))

    seen = {}
    for n in root_nodes:
        seen[n.cls] = seen.get(n.cls, 0) + 1
        walk(n, "/hierarchy/%s[%d]" % (n.cls, seen[n.cls]))
    return out


def screen(package, title, body, actions=None, status=True):
    rid = lambda s: "%s:id/%s" % (package, s)
    bar = V("android.view.ViewGroup",
            V("TextView", text=title, rid=rid("toolbar_title")),
            *(actions or []),
            rid=rid("toolbar"))
    content = V("FrameLayout",
                V("LinearLayout", bar, *body, rid=rid("main_container")),
                rid="android:id/content")
    decor = V("FrameLayout",
              V("LinearLayout",
                V("FrameLayout", content, rid=rid("action_bar_root")),
                rid=rid("decor_content_parent")))
    roots = [decor]
    layout_bounds(decor, (0, 0, W, H))
    if status:
        bar = V("FrameLayout", V("android.view.View"), rid="com.android.systemui:id/status_bar")
        layout_bounds(bar, (0, 0, W, 63))
        roots.append(bar)
    return roots


def button(text, key, desc="", cls="Button", **kw):
    return Node(cls, text=text, desc=desc, key=key, clickable=True, **kw)


# ---------------------------------------------------------------- states

def launcher():
    icons = [Node("TextView", text=a["name"], desc=a["name"], key="icon_" + a["name"].lower(),
                  clickable=True, long_clickable=True) for a in APPS]
    grid = V("android.view.ViewGroup", *icons, rid="com.android.launcher3:id/workspace")
    root = V("FrameLayout", V("android.view.ViewGroup", grid, rid="com.android.launcher3:id/launcher"))
    layout_bounds(root, (0, 0, W, H))
    return [root]


def contact_row(name, key):
    return V("LinearLayout",
             V("android.widget.QuickContactBadge", desc="Quick contact for " + name),
             V("TextView", text=name, rid=CONTACTS + ":id/cliv_name_textview"),
             key=key, clickable=True, long_clickable=True, rid=CONTACTS + ":id/cliv_root")


def contacts_list():
    body = [
        V("FrameLayout",
          Node("EditText", text="", desc="Search contacts", key="search", clickable=True)),
        V("androidx.recyclerview.widget.RecyclerView",
          contact_row("Bob", "row_bob"), contact_row("Jack", "row_jack"),
          key="list", scrollable=True, rid=CONTACTS + ":id/list"),
        button("", "fab_create", desc="Create contact", cls="ImageButton"),
    ]
    return screen(CONTACTS, "Contacts", body,
                  [button("", "settings_btn", desc="Settings", cls="ImageButton")])


def contact_detail(name, phone):
    body = [
        V("android.widget.ScrollView",
          V("LinearLayout",
            V("TextView", text=name, rid=CONTACTS + ":id/large_title"),
            V("LinearLayout",
              V("TextView", text=phone),
              V("TextView", text="Mobile"),
              key="phone_row", clickable=True, long_clickable=True),
            V("LinearLayout",
              button("Call", "call"), button("Text", "text"), button("Video", "video"))))
    ]
    return screen(CONTACTS, "", body, [button("", "edit", desc="Edit contact", cls="ImageButton")])


def calling(name):
    body = [V("LinearLayout",
              V("TextView", text="Calling " + name),
              V("TextView", text="555 0199"),
              button("", "end_call", desc="End call", cls="ImageButton"))]
    return screen(CONTACTS, "", body, status=True)


def contact_create():
    fields = V("LinearLayout",
               Node("EditText", text="", desc="First name", key="first_name", clickable=True),
               Node("EditText", text="", desc="Last name", key="last_name", clickable=True),
               Node("EditText", text="", desc="Phone", key="phone", clickable=True),
               Node("EditText", text="", desc="Email", key="email", clickable=True))
    return screen(CONTACTS, "Create contact", [V("android.widget.ScrollView", fields)],
                  [button("", "cancel", desc="Cancel", cls="ImageButton"), button("Save", "save")])


def contact_saved():
    body = [V("LinearLayout", V("TextView", text="Alice"), V("TextView", text="555 0101"),
              V("TextView", text="Contact saved"))]
    return screen(CONTACTS, "", body)


def contacts_settings(on):
    body = [V("androidx.recyclerview.widget.RecyclerView",
              V("LinearLayout",
                V("TextView", text="Display options"),
                rid="android:id/title_container"),
              V("LinearLayout",
                V("TextView", text="Sort by"), V("TextView", text="First name"),
                key="sort_by", clickable=True),
              V("LinearLayout",
                V("TextView", text="Show phonetic name"),
                Node("Switch", text="Show phonetic name", key="phonetic_switch", clickable=True,
                     checkable=True, checked=on)),
              scrollable=True)]
    return screen(CONTACTS, "Settings", body)


EMAILS = [
    ("Alice", "Lunch tomorrow?", "Are you free around noon at the usual place", "10:24 AM"),
    ("Google", "Security alert", "A new sign-in on a Pixel device", "9:51 AM"),
    ("Bob", "Re: slides", "I pushed the last round of edits to the shared folder", "9:02 AM"),
    ("GitHub", "[mobench] New pull request", "A contributor opened a pull request for review", "8:40 AM"),
    ("Jack", "Weekend hike", "Weather looks good for Saturday morning", "Yesterday"),
    ("Calendar", "Reminder: dentist", "Tuesday 3:00 PM at the clinic", "Yesterday"),
    ("Newsletter", "This week in apps", "Ten tips to keep your phone tidy", "Mon"),
    ("Carol", "Invoice 1042", "Please find the invoice attached", "Mon"),
    ("Dave", "Photos from the trip", "Uploaded the album last night", "Sun"),
    ("Eve", "Quick question", "Do you still have the charger I lent you", "Sun"),
    ("Bank", "Statement ready", "Your monthly statement is available", "Sat"),
    ("Airline", "Check in now", "Your flight to Paris departs in 24 hours", "Sat"),
    ("Frank", "Book club", "Next meeting moved to Thursday", "Fri"),
    ("Grace", "Recipe", "Here's the soup recipe you asked for", "Fri"),
    ("Heidi", "Movie night", "Tickets booked for 8 PM", "Thu"),
    ("Ivan", "Moving boxes", "Can you help carry boxes on Sunday", "Thu"),
]


def email_row(i, sender, subject, snippet, date, key=None):
    g = lambda s: GMAIL + ":id/" + s
    return V("android.view.ViewGroup",
             Node("ImageView", desc="Avatar for " + sender, rid=g("contact_image")),
             V("LinearLayout",
               V("LinearLayout",
                 V("TextView", text=sender, rid=g("senders")),
                 V("TextView", text=date, rid=g("date"))),
               V("TextView", text=subject, rid=g("subject")),
               V("TextView", text=snippet, rid=g("snippet"))),
             Node("ImageView", desc="", rid=g("star")),
             key=key, clickable=True, long_clickable=True, rid=g("viewified_conversation_item_view"))


def gmail_inbox(drop_alice=False, snackbar=None):
    rows = []
    for i, (s, subj, snip, d) in enumerate(EMAILS):
        if drop_alice and s == "Alice":
            continue
        rows.append(email_row(i, s, subj, snip, d, key="email_" + s.lower()))
    g = lambda s: GMAIL + ":id/" + s
    body = [
        V("FrameLayout",
          V("LinearLayout",
            button("", "drawer", desc="Open navigation drawer", cls="ImageButton"),
            Node("TextView", text="Search in mail", key="search", clickable=True, rid=g("open_search_bar_text_view")),
            button("", "account", desc="Signed in as user@example.com", cls="ImageView")),
          rid=g("open_search")),
        V("androidx.recyclerview.widget.RecyclerView",
          V("LinearLayout", V("TextView", text="Primary", rid=g("folder_name"))),
          *rows, key="thread_list", scrollable=True, rid=g("thread_list_view")),
        V("FrameLayout",
          button("Compose", "compose", cls="Button", rid=g("compose_button"))),
    ]
    if snackbar:
        body.append(V("LinearLayout", V("TextView", text=snackbar), button("Undo", "undo")))
    return screen(GMAIL, "", body)


def gmail_drawer():
    items = [Node("TextView", text=t, key="nav_" + t.lower().replace(" ", "_"), clickable=True)
             for t in ["Inbox", "Starred", "Snoozed", "Sent", "Drafts", "Spam", "Settings", "Help and feedback"]]
    body = [V("androidx.recyclerview.widget.RecyclerView", *items)]
    return screen(GMAIL, "Gmail", body)


def gmail_email(starred):
    body = [
        V("android.widget.ScrollView",
          V("LinearLayout",
            V("TextView", text="Lunch tomorrow?"),
            V("LinearLayout", V("TextView", text="Alice"), V("TextView", text="to me"),
              V("TextView", text="10:24 AM")),
            V("android.webkit.WebView", V("android.view.View", text="Are you free around noon at the usual place? Cheers, Alice")))),
        V("LinearLayout", button("Reply", "reply"), button("Forward", "forward")),
    ]
    actions = [
        button("", "archive", desc="Archive", cls="ImageButton"),
        button("", "delete", desc="Delete", cls="ImageButton"),
        button("", "star", desc="Unstar" if starred else "Star", cls="ImageButton"),
    ]
    return screen(GMAIL, "", body, actions)


def gmail_settings():
    body = [V("androidx.recyclerview.widget.RecyclerView",
              Node("TextView", text="General settings", key="general", clickable=True),
              Node("TextView", text="user@example.com", key="account_settings", clickable=True),
              Node("TextView", text="Add account", key="add_account", clickable=True))]
    return screen(GMAIL, "Settings", body)


def gmail_compose():
    body = [V("android.widget.ScrollView",
              V("LinearLayout",
                V("LinearLayout", V("TextView", text="From"), V("TextView", text="user@example.com")),
                Node("EditText", desc="To", key="to", clickable=True),
                Node("EditText", desc="Subject", key="subject", clickable=True),
                Node("EditText", desc="Compose email", key="body", clickable=True)))]
    return screen(GMAIL, "Compose", body, [button("", "send", desc="Send", cls="ImageButton")])


def weather_home():
    def city(name, temp, key):
        return V("LinearLayout", V("TextView", text=name), V("TextView", text=temp), key=key, clickable=True)
    body = [V("androidx.recyclerview.widget.RecyclerView",
              city("London", "14°", "city_london"), city("Paris", "18°", "city_paris"),
              city("Tokyo", "22°", "city_tokyo"), scrollable=True)]
    return screen(WEATHER, "Weather", body, [button("", "settings", desc="Settings", cls="ImageButton")])


def weather_city(name, temp, cond):
    body = [V("LinearLayout", V("TextView", text=name), V("TextView", text=temp), V("TextView", text=cond),
              V("TextView", text="Humidity 60%"), V("TextView", text="Wind 12 km/h"))]
    return screen(WEATHER, name, body)


def weather_settings():
    body = [V("LinearLayout",
              V("LinearLayout", V("TextView", text="Use Fahrenheit"),
                Node("Switch", text="", key="units", clickable=True, checkable=True)))]
    return screen(WEATHER, "Settings", body)


def calendar_home(with_event=None):
    days = [Node("TextView", text=str(d)) for d in range(1, 8)]
    body = [V("LinearLayout", V("TextView", text="January 2024"), V("LinearLayout", *days))]
    if with_event:
        body.append(V("LinearLayout", Node("TextView", text=with_event, key="event", clickable=True)))
    body.append(button("", "create", desc="Create event", cls="ImageButton"))
    return screen(CALENDAR, "Calendar", body)


def calendar_new_event():
    body = [V("LinearLayout",
              Node("EditText", desc="Add title", key="title", clickable=True),
              V("LinearLayout", V("TextView", text="All-day"),
                Node("Switch", text="", key="all_day", clickable=True, checkable=True)),
              V("TextView", text="Mon, Jan 1, 2024"))]
    return screen(CALENDAR, "", body, [button("", "close", desc="Close", cls="ImageButton"), button("Save", "save")])


STATES = [
    ("home", "", "home", launcher),
    ("contacts_list", CONTACTS, "contacts/list", contacts_list),
    ("contact_bob", CONTACTS, "contacts/detail", lambda: contact_detail("Bob", "555 0199")),
    ("calling_bob", CONTACTS, "contacts/call", lambda: calling("Bob")),
    ("contact_create", CONTACTS, "contacts/editor", contact_create),
    ("contact_saved", CONTACTS, "contacts/detail", contact_saved),
    ("contacts_settings", CONTACTS, "contacts/settings", lambda: contacts_settings(False)),
    ("contacts_settings_on", CONTACTS, "contacts/settings", lambda: contacts_settings(True)),
    ("gmail_inbox", GMAIL, "gmail/inbox", gmail_inbox),
    ("gmail_inbox_deleted", GMAIL, "gmail/inbox", lambda: gmail_inbox(True, "Conversation deleted")),
    ("gmail_inbox_sent", GMAIL, "gmail/inbox", lambda: gmail_inbox(False, "Message sent")),
    ("gmail_drawer", GMAIL, "gmail/drawer", gmail_drawer),
    ("gmail_email_alice", GMAIL, "gmail/conversation", lambda: gmail_email(False)),
    ("gmail_email_alice_starred", GMAIL, "gmail/conversation", lambda: gmail_email(True)),
    ("gmail_settings", GMAIL, "gmail/settings", gmail_settings),
    ("gmail_compose", GMAIL, "gmail/compose", gmail_compose),
    ("weather_home", WEATHER, "weather/home", weather_home),
    ("weather_london", WEATHER, "weather/city", lambda: weather_city("London", "14°", "Cloudy")),
    ("weather_paris", WEATHER, "weather/city", lambda: weather_city("Paris", "18°", "Sunny")),
    ("weather_settings", WEATHER, "weather/settings", weather_settings),
    ("calendar_home", CALENDAR, "calendar/month", calendar_home),
    ("calendar_new_event", CALENDAR, "calendar/editor", calendar_new_event),
    ("calendar_event_saved", CALENDAR, "calendar/month", lambda: calendar_home("Trip to Paris")),
]


def write(path, text):
    path = os.path.join(ROOT, path)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def write_json(path, doc):
    write(path, json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def build_suite():
    paths = {}
    states = []
    for sid, pkg, tag, fn in STATES:
        roots = fn()
        xml = xml_of(roots, pkg or LAUNCHER)
        write("suite/states/%s.xml" % sid, xml)
        paths[sid] = key_paths(roots)
        st = {"id": sid, "page_tag": tag, "xml_file": "states/%s.xml" % sid}
        if pkg:
            st["app"] = pkg
        states.append(st)

    P = lambda sid, key: paths[sid][key]
    T = []

    def edge(frm, verb, to, key=None, payload=None, target=None):
        e = {"from": frm, "verb": verb, "to": to}
        if key:
            e["target_path"] = P(frm, key)
        if target:
            e["target_path"] = target
        if payload is not None:
            e["payload"] = payload
        T.append(e)

    for sid, _, _, _ in STATES:
        for a in APPS:
            edge(sid, "start-app", LAUNCH_STATE[a["package"]], target=a["package"])
    for a in APPS:
        edge("home", "click", LAUNCH_STATE[a["package"]], key="icon_" + a["name"].lower())

    edge("contacts_list", "click", "contact_bob", "row_bob")
    edge("contacts_list", "click", "contact_create", "fab_create")
    edge("contacts_list", "click", "contacts_settings", "settings_btn")
    edge("contacts_list", "swipe-down", "contacts_list")
    edge("contact_bob", "click", "calling_bob", "call")
    edge("calling_bob", "click", "contact_bob", "end_call")
    for k in ["first_name", "last_name", "phone", "email"]:
        edge("contact_create", "set-text", "contact_create", k)
    edge("contact_create", "click", "contact_saved", "save")
    edge("contact_create", "click", "contacts_list", "cancel")
    edge("contacts_settings", "click", "contacts_settings_on", "phonetic_switch")
    edge("contacts_settings_on", "click", "contacts_settings", "phonetic_switch")

    for inbox in ["gmail_inbox", "gmail_inbox_sent"]:
        edge(inbox, "click", "gmail_drawer", "drawer")
        edge(inbox, "click", "gmail_email_alice", "email_alice")
        edge(inbox, "click", "gmail_compose", "compose")
        edge(inbox, "swipe-up", inbox)
    edge("gmail_inbox_deleted", "click", "gmail_drawer", "drawer")
    edge("gmail_inbox_deleted", "click", "gmail_inbox", "undo")
    edge("gmail_drawer", "click", "gmail_inbox", "nav_inbox")
    edge("gmail_drawer", "click", "gmail_settings", "nav_settings")
    edge("gmail_email_alice", "click", "gmail_email_alice_starred", "star")
    edge("gmail_email_alice", "click", "gmail_inbox_deleted", "delete")
    edge("gmail_email_alice", "click", "gmail_inbox_deleted", "archive")
    edge("gmail_email_alice_starred", "click", "gmail_email_alice", "star")
    edge("gmail_email_alice_starred", "click", "gmail_inbox_deleted", "delete")
    for k in ["to", "subject", "body"]:
        edge("gmail_compose", "set-text", "gmail_compose", k)
    edge("gmail_compose", "click", "gmail_inbox_sent", "send")

    edge("weather_home", "click", "weather_london", "city_london")
    edge("weather_home", "click", "weather_paris", "city_paris")
    edge("weather_home", "click", "weather_settings", "settings")

    edge("calendar_home", "click", "calendar_new_event", "create")
    edge("calendar_event_saved", "click", "calendar_new_event", "create")
    edge("calendar_new_event", "set-text", "calendar_new_event", "title")
    edge("calendar_new_event", "click", "calendar_home", "close")
    edge("calendar_new_event", "click", "calendar_event_saved", "save")

    write_json("suite/graph.json", {"apps": APPS, "initial": "home", "states": states, "transitions": T})

    A = lambda verb, sid=None, key=None, payload=None, target=None: dict(
        [("verb", verb)] + ([("target_path", P(sid, key))] if key else [])
        + ([("target_path", target)] if target else []) + ([("payload", payload)] if payload is not None else []))
    start = lambda pkg: A("start-app", target=pkg)

    tasks = [
        {"id": "contacts-call-bob", "task_type": "single-app", "apps": ["Contacts"],
         "instruction": "Call Bob using the Contacts app.",
         "gold_actions": [start(CONTACTS), A("click", "contacts_list", "row_bob"), A("click", "contact_bob", "call")],
         "final_state": "calling_bob"},
        {"id": "contacts-create-alice", "task_type": "single-app", "apps": ["Contacts"],
         "instruction": "Create a new contact named Alice with the phone number 555 0101.",
         "gold_actions": [start(CONTACTS), A("click", "contacts_list", "fab_create"),
                          A("set-text", "contact_create", "first_name", "Alice"),
                          A("set-text", "contact_create", "phone", "555 0101"),
                          A("click", "contact_create", "save")],
         "final_state": "contact_saved"},
        {"id": "contacts-phonetic-name", "task_type": "single-app", "apps": ["Contacts"],
         "instruction": "Turn on the option to show phonetic names in Contacts.",
         "gold_actions": [start(CONTACTS), A("click", "contacts_list", "settings_btn"),
                          A("click", "contacts_settings", "phonetic_switch")],
         "final_state": "contacts_settings_on"},
        {"id": "gmail-open-settings", "task_type": "single-app", "apps": ["Gmail"],
         "instruction": "Open the settings page in Gmail.",
         "gold_actions": [start(GMAIL), A("click", "gmail_inbox", "drawer"), A("click", "gmail_drawer", "nav_settings")],
         "final_state": "gmail_settings"},
        {"id": "gmail-send-hello", "task_type": "single-app", "apps": ["Gmail"],
         "instruction": "Send an email to jack@example.com with the subject Hello.",
         "gold_actions": [start(GMAIL), A("click", "gmail_inbox", "compose"),
                          A("set-text", "gmail_compose", "to", "jack@example.com"),
                          A("set-text", "gmail_compose", "subject", "Hello"),
                          A("click", "gmail_compose", "send")],
         "final_state": "gmail_inbox_sent"},
        {"id": "weather-paris", "task_type": "single-app", "apps": ["Weather"],
         "instruction": "Check today's weather in Paris.",
         "gold_actions": [start(WEATHER), A("click", "weather_home", "city_paris")],
         "final_state": "weather_paris"},
        {"id": "cross-paris-trip", "task_type": "cross-app", "apps": ["Weather", "Calendar"],
         "instruction": "Check the weather in Paris, then add an event called Trip to Paris to the calendar.",
         "gold_actions": [start(WEATHER), A("click", "weather_home", "city_paris"), start(CALENDAR),
                          A("click", "calendar_home", "create"),
                          A("set-text", "calendar_new_event", "title", "Trip to Paris"),
                          A("click", "calendar_new_event", "save")],
         "final_state": "calendar_event_saved"},
        {"id": "cross-call-bob-weather", "task_type": "cross-app", "apps": ["Contacts", "Weather"],
         "instruction": "Look up the weather in London and then call Bob.",
         "gold_actions": [start(WEATHER), A("click", "weather_home", "city_london"), start(CONTACTS),
                          A("click", "contacts_list", "row_bob"), A("click", "contact_bob", "call")],
         "final_state": "calling_bob"},
        {"id": "constrained-weather-no-gmail", "task_type": "constrained", "apps": ["Weather"],
         "instruction": "Check the weather in London without opening Gmail.",
         "constraints": [{"level": "app", "subject": GMAIL, "description": "Gmail must not be opened"}],
         "gold_actions": [start(WEATHER), A("click", "weather_home", "city_london")],
         "final_state": "weather_london"},
        {"id": "constrained-star-no-settings", "task_type": "constrained", "apps": ["Gmail"],
         "instruction": "Star the email from Alice in Gmail without visiting the Gmail settings page.",
         "constraints": [{"level": "page", "subject": "gmail/settings", "description": "the settings page must not be visited"}],
         "gold_actions": [start(GMAIL), A("click", "gmail_inbox", "email_alice"), A("click", "gmail_email_alice", "star")],
         "final_state": "gmail_email_alice_starred"},
        {"id": "constrained-open-no-delete", "task_type": "constrained", "apps": ["Gmail"],
         "instruction": "Open the email from Alice in Gmail. Do not press the Delete button.",
         "constraints": [{"level": "component", "subject": P("gmail_email_alice", "delete"),
                          "description": "the Delete button must not be pressed"}],
         "gold_actions": [start(GMAIL), A("click", "gmail_inbox", "email_alice")],
         "final_state": "gmail_email_alice"},
    ]
    write_json("suite/tasks.json", {"graph": "graph.json", "tasks": tasks})

    fin = {"verb": "finish"}
    violating = {
        "constrained-weather-no-gmail": [start(GMAIL), start(WEATHER), A("click", "weather_home", "city_london"), fin],
        "constrained-star-no-settings": [start(GMAIL), A("click", "gmail_inbox", "drawer"),
                                         A("click", "gmail_drawer", "nav_settings"), {"verb": "press-back"},
                                         {"verb": "press-back"}, A("click", "gmail_inbox", "email_alice"),
                                         A("click", "gmail_email_alice", "star"), fin],
        "constrained-open-no-delete": [start(GMAIL), A("click", "gmail_inbox", "email_alice"),
                                       A("click", "gmail_email_alice", "delete"), fin],
    }
    write_json("suite/violating_plans.json", violating)
    loop = {"contacts-call-bob": [start(CONTACTS), {"verb": "swipe-down"}, {"verb": "swipe-down"},
                                  A("click", "contacts_list", "row_bob"), A("click", "contact_bob", "call"), fin]}
    write_json("suite/loop_plans.json", loop)

    strict_tasks = [
        {"id": "strict-call-bob", "task_type": "single-app", "apps": ["Contacts"],
         "instruction": "Call Bob using the Contacts app.",
         "gold_actions": tasks[0]["gold_actions"], "final_state": "calling_bob"},
        {"id": "strict-open-jack", "task_type": "single-app", "apps": ["Contacts"],
         "instruction": "Open Jack's contact card.",
         "gold_actions": [start(CONTACTS), A("click", "contacts_list", "row_jack")]},
    ]
    write_json("strict/tasks.json", {"graph": "../suite/graph.json", "tasks": strict_tasks})
    return paths


def build_alignment():
    letters = "ABCDEFGUVWXYZ"
    buttons = [button(c, "btn_" + c) for c in letters]
    roots = screen("com.example.letters", "Letters", [V("LinearLayout", *buttons)])
    write("alignment/letters.xml", xml_of(roots, "com.example.letters"))
    kp = key_paths(roots)
    click = lambda c: {"verb": "click", "target_path": kp["btn_" + c]}
    write_json("alignment/graph.json", {
        "apps": [{"package": "com.example.letters", "name": "Letters"}],
        "initial": "letters",
        "states": [{"id": "letters", "app": "com.example.letters", "page_tag": "letters", "xml_file": "letters.xml"}],
        "transitions": [{"from": "letters", "verb": "click", "target_path": kp["btn_" + c], "to": "letters"}
                        for c in letters],
    })
    write_json("alignment/tasks.json", {"graph": "graph.json", "tasks": [
        {"id": "letters", "task_type": "single-app", "apps": ["Letters"],
         "instruction": "Press the letters A through G in order.", "max_steps": 20,
         "gold_actions": [click(c) for c in "ABCDEFG"]}]})
    write_json("alignment/plans.json", {"letters": [click(c) for c in "AXYBUVWEFFFGZ"] + [{"verb": "finish"}]})


CORPUS = {
    "01_compose": ("Compose and send an email",
                   "Tap Compose at the bottom of the inbox. Add recipients in the To field, type a subject and "
                   "the message body, then tap Send. You can add Cc and Bcc recipients from the arrow next to To."),
    "02_attachments": ("Attach files and photos",
                       "While writing a message tap the paperclip to attach a file or photo. Files from Drive "
                       "can be inserted as links. Large attachments are shared as Drive links automatically."),
    "03_search": ("Search your mail",
                  "Use the search bar at the top of the inbox. Type a sender, subject or keyword. Filter chips "
                  "let you narrow the results by attachment, date or read status."),
    "04_labels": ("Organize with labels",
                  "Open a conversation, tap More and choose Change labels. Labels work like folders but a "
                  "message can carry several labels. Create new labels from the navigation drawer."),
    "05_star": ("Star important messages",
                "Tap the star next to a message to mark it. Starred messages appear under Starred in the "
                "navigation drawer. Tap the star again to remove it."),
    "06_archive_delete": ("Archive or delete messages",
                          "Archive removes a conversation from the inbox but keeps it in All mail. Delete moves "
                          "it to Trash, where it stays for 30 days. Swipe actions can be set in settings."),
    "07_signature": ("Set up a signature",
                     "Open Settings from the navigation drawer, pick your account and tap Mobile signature. "
                     "The signature is added to the end of every message you send from this device."),
    "08_vacation": ("Send an automatic vacation reply",
                    "In Settings choose your account and open Vacation responder. Turn it on, set the first "
                    "and last day, and write a subject and message for automatic replies."),
    "09_notifications": ("Manage notifications",
                         "Under Settings you can choose notifications for all new mail, high priority mail only, "
                         "or none. Notification sounds can be set per label."),
    "10_schedule": ("Schedule a message",
                    "Write the message, open the menu next to Send and choose Schedule send. Pick a suggested "
                    "time or set a custom date and time. Scheduled mail waits in the Scheduled folder."),
}


def build_corpus():
    for stem, (title, text) in CORPUS.items():
        write("corpus/gmail/%s.txt" % stem, title + "\n\n" + text + "\n")


def main():
    build_suite()
    build_alignment()
    build_corpus()
    return 0


if __name__ == "__main__":
    sys.exit(main())
