namespace tie {
}
