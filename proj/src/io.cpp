namespace geoclique {
}  // namespace geoclique
