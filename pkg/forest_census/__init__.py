# Package marker for forest_census modules
