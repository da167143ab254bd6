package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class LostReferenceRequery {
    public void loadDeck(SQLiteDatabase db) {
        Cursor cur = db.rawQuery("SELECT id FROM decks", null);
        long id = cur.getLong(0);
        cur = db.rawQuery("SELECT name FROM decks WHERE id = " + id, null);
        try {
            publish(cur.getString(0));
        } finally {
            cur.close();
        }
    }

    private void publish(String name) {
    }
}
