# Commands package marker
